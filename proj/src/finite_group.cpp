#include "bpu/finite_group.hpp"

#include <map>
#include <stdexcept>

#include <json.hpp>

namespace bpu {

MultiplicationTable::MultiplicationTable(std::vector<std::uint32_t> product, std::uint32_t identity,
                                         std::vector<std::string> labels, std::vector<std::uint32_t> generators)
    : identity_(identity), product_(std::move(product)), labels_(std::move(labels)), generators_(std::move(generators))
{
    std::size_t n = 0;
    while (n * n < product_.size())
        ++n;
    if (n == 0 || n * n != product_.size())
        throw std::invalid_argument("MultiplicationTable: table is not square");
    order_ = n;
    if (identity_ >= n)
        throw std::invalid_argument("MultiplicationTable: identity out of range");
    if (!labels_.empty() && labels_.size() != n)
        throw std::invalid_argument("MultiplicationTable: label count mismatch");
    for (auto g : generators_)
        if (g >= n)
            throw std::invalid_argument("MultiplicationTable: generator out of range");
    inverse_.assign(n, static_cast<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a) {
        std::vector<bool> row(n, false), col(n, false);
        for (std::uint32_t b = 0; b < n; ++b) {
            const auto ab = mul(a, b), ba = mul(b, a);
            if (ab >= n || ba >= n || row[ab] || col[ba])
                throw std::invalid_argument("MultiplicationTable: not a Latin square");
            row[ab] = col[ba] = true;
            if (ab == identity_)
                inverse_[a] = b;
        }
        if (mul(identity_, a) != a || mul(a, identity_) != a)
            throw std::invalid_argument("MultiplicationTable: identity is not neutral");
    }
}

bool MultiplicationTable::is_associative() const
{
    for (std::uint32_t a = 0; a < order_; ++a)
        for (std::uint32_t b = 0; b < order_; ++b)
            for (std::uint32_t c = 0; c < order_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    return false;
    return true;
}

nlohmann::json MultiplicationTable::to_json() const
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint32_t a = 0; a < order_; ++a)
        rows.push_back(std::vector<std::uint32_t>(product_.begin() + a * order_, product_.begin() + (a + 1) * order_));
    return {{"order", order_}, {"identity", identity_}, {"generators", generators_}, {"labels", labels_}, {"table", rows}};
}

MultiplicationTable MultiplicationTable::from_json(const nlohmann::json& j)
{
    std::vector<std::uint32_t> product;
    for (const auto& row : j.at("table"))
        for (const auto& v : row)
            product.push_back(v.get<std::uint32_t>());
    return MultiplicationTable(std::move(product), j.at("identity").get<std::uint32_t>(),
                               j.value("labels", std::vector<std::string>{}),
                               j.value("generators", std::vector<std::uint32_t>{}));
}

std::vector<bool> generated_subgroup(const MultiplicationTable& g, const std::vector<std::uint32_t>& seeds)
{
    std::vector<bool> in(g.order(), false);
    std::vector<std::uint32_t> members{g.identity()};
    in[g.identity()] = true;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (auto s : seeds) {
            const auto x = g.mul(members[i], s);
            if (!in[x]) {
                in[x] = true;
                members.push_back(x);
            }
        }
    return in;
}

std::vector<bool> commutator_subgroup(const MultiplicationTable& g)
{
    std::vector<std::uint32_t> commutators;
    std::vector<bool> seen(g.order(), false);
    for (std::uint32_t a = 0; a < g.order(); ++a)
        for (std::uint32_t b = 0; b < g.order(); ++b) {
            const auto c = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            if (!seen[c]) {
                seen[c] = true;
                commutators.push_back(c);
            }
        }
    return generated_subgroup(g, commutators);
}

std::vector<bool> center(const MultiplicationTable& g)
{
    std::vector<bool> out(g.order(), true);
    for (std::uint32_t a = 0; a < g.order(); ++a)
        for (std::uint32_t b = 0; b < g.order() && out[a]; ++b)
            out[a] = g.mul(a, b) == g.mul(b, a);
    return out;
}

FgAbGroup abelianization(const MultiplicationTable& g)
{
    const auto derived = commutator_subgroup(g);
    // Cosets x[G,G], numbered by first appearance.
    std::vector<std::size_t> coset(g.order(), g.order());
    std::size_t count = 0;
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        if (coset[a] != g.order())
            continue;
        for (std::uint32_t c = 0; c < g.order(); ++c)
            if (derived[c])
                coset[g.mul(a, c)] = count;
        ++count;
    }
    std::vector<std::uint32_t> rep(count);
    for (std::uint32_t a = g.order(); a-- > 0;)
        rep[coset[a]] = a;
    // Z^{cosets} modulo e_x + e_y - e_{xy}.
    IntMatrix rel(count * count, count);
    for (std::size_t x = 0; x < count; ++x)
        for (std::size_t y = 0; y < count; ++y) {
            const std::size_t r = x * count + y;
            rel(r, x) += 1;
            rel(r, y) += 1;
            rel(r, coset[g.mul(rep[x], rep[y])]) -= 1;
        }
    return cokernel_group(rel);
}

}  // namespace bpu
