#pragma once

// The mod-p Steenrod algebra, p odd, in the Milnor basis and the admissible
// (Serre-Cartan) basis.
//
// Conventions used throughout:
//   * beta is the Bockstein, P^s the reduced powers, P^0 = 1.
//   * Milnor primitives: Q_0 = beta, Q_1 = beta P^1 - P^1 beta and
//     Q_{j+1} = P^{p^j} Q_j - Q_j P^{p^j} for j >= 1. For j >= 1 these are the
//     negatives of Milnor's primitives; the product formula carries the
//     matching sign.
//   * The Milnor basis element Q(E) P(R) is Q_{e_1} Q_{e_2} ... P(R) with
//     e_1 < e_2 < ... .
//   * Coefficients are residues in [0, p).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpu::steenrod {

class OddPrime {
public:
    static constexpr std::uint32_t kMaxPrime = 1u << 15;

    // Throws std::invalid_argument unless p is an odd prime below kMaxPrime.
    explicit OddPrime(std::uint32_t p);

    std::uint32_t value() const { return p_; }
    // p^i; throws std::overflow_error past 2^63.
    std::uint64_t power(unsigned i) const;

    std::uint32_t reduce(long long c) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    }
    // Binomial coefficient mod p via Lucas' theorem; 0 when k > n.
    std::uint32_t binomial(std::uint64_t n, std::uint64_t k) const;
    // (x_1 + ... + x_m)! / (x_1! ... x_m!) mod p.
    std::uint32_t multinomial(std::span<const std::uint64_t> xs) const;

    friend bool operator==(const OddPrime& a, const OddPrime& b) { return a.p_ == b.p_; }

private:
    struct Tables {
        std::vector<std::uint32_t> fact;
        std::vector<std::uint32_t> inv_fact;
    };
    std::uint32_t p_;
    std::shared_ptr<const Tables> tables_;
};

// A word in the letters beta and P^s: 0 encodes beta, s > 0 encodes P^s.
using Word = std::vector<std::uint64_t>;
inline constexpr std::uint64_t kBeta = 0;

// beta^{e_0} P^{s_1} beta^{e_1} ... P^{s_k} beta^{e_k} with s_i >= p s_{i+1} + e_i.
class AdmissibleWord {
public:
    AdmissibleWord() : eps_{0} {}
    // Throws std::invalid_argument if the data is malformed or not admissible at p.
    AdmissibleWord(std::vector<std::uint8_t> eps, std::vector<std::uint64_t> s, const OddPrime& p);

    // nullopt if the letters do not spell an admissible word (P^0 letters are not allowed).
    static std::optional<AdmissibleWord> from_letters(const Word& w, const OddPrime& p);

    const std::vector<std::uint8_t>& eps() const { return eps_; }
    const std::vector<std::uint64_t>& s() const { return s_; }
    std::size_t length() const { return s_.size(); }
    bool is_unit() const { return s_.empty() && eps_[0] == 0; }

    Word letters() const;
    std::uint64_t degree(const OddPrime& p) const;
    long long excess(const OddPrime& p) const;

    // "b P^3 P^1"; the unit renders as "1".
    std::string to_string() const;

    // s-sequence lexicographic, then the epsilon bits.
    friend bool operator<(const AdmissibleWord& a, const AdmissibleWord& b);
    friend bool operator==(const AdmissibleWord& a, const AdmissibleWord& b) = default;

private:
    std::vector<std::uint8_t> eps_;
    std::vector<std::uint64_t> s_;
};

// Q(E) P(R): E strictly increasing, R without trailing zeros.
class MilnorMonomial {
public:
    MilnorMonomial() = default;
    // Sorts E and trims R; throws std::invalid_argument on a repeated exterior index.
    MilnorMonomial(std::vector<std::uint32_t> e, std::vector<std::uint64_t> r);

    static MilnorMonomial q(std::uint32_t j) { return MilnorMonomial({j}, {}); }
    static MilnorMonomial p_power(std::uint64_t s) { return MilnorMonomial({}, {s}); }

    const std::vector<std::uint32_t>& e() const { return e_; }
    const std::vector<std::uint64_t>& r() const { return r_; }
    bool is_unit() const { return e_.empty() && r_.empty(); }

    std::uint64_t degree(const OddPrime& p) const;

    // "Q(0,2) P(1,1)"; the unit renders as "1".
    std::string to_string() const;

    // R lexicographic, then E.
    friend bool operator<(const MilnorMonomial& a, const MilnorMonomial& b);
    friend bool operator==(const MilnorMonomial& a, const MilnorMonomial& b) = default;

private:
    std::vector<std::uint32_t> e_;
    std::vector<std::uint64_t> r_;
};

enum class Basis { admissible, milnor };

std::string_view basis_name(Basis b);

template <class Mono>
class Element {
public:
    explicit Element(OddPrime p) : p_(std::move(p)) {}
    Element(OddPrime p, Mono m, long long coeff = 1) : p_(std::move(p)) { add(m, coeff); }

    const OddPrime& prime() const { return p_; }
    const std::map<Mono, std::uint32_t>& terms() const { return terms_; }

    void add(const Mono& m, long long coeff)
    {
        std::uint32_t c = p_.reduce(coeff);
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = (it->second + c) % p_.value();
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    std::uint32_t coefficient(const Mono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const
    {
        std::optional<std::uint64_t> d;
        for (const auto& [m, c] : terms_) {
            std::uint64_t dm = m.degree(p_);
            if (d && *d != dm)
                return false;
            d = dm;
        }
        return true;
    }
    // Degree of a nonzero homogeneous element.
    std::optional<std::uint64_t> degree() const
    {
        if (terms_.empty() || !is_homogeneous())
            return std::nullopt;
        return terms_.begin()->first.degree(p_);
    }

    Element& operator+=(const Element& o)
    {
        check_prime(o);
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    Element& operator-=(const Element& o)
    {
        check_prime(o);
        for (const auto& [m, c] : o.terms_)
            add(m, -static_cast<long long>(c));
        return *this;
    }
    Element scaled(long long k) const
    {
        Element out(p_);
        for (const auto& [m, c] : terms_)
            out.add(m, static_cast<long long>(p_.mul(c, p_.reduce(k))));
        return out;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend bool operator==(const Element& a, const Element& b) { return a.p_ == b.p_ && a.terms_ == b.terms_; }

    // Terms in monomial order, "2 P^2 + b P^1"; zero renders as "0".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty())
                out += " + ";
            if (c != 1)
                out += std::to_string(c) + (m.is_unit() ? "" : " ");
            if (c == 1 || !m.is_unit())
                out += m.to_string();
        }
        return out;
    }

    void check_prime(const Element& o) const;

private:
    OddPrime p_;
    std::map<Mono, std::uint32_t> terms_;
};

using MilnorElement = Element<MilnorMonomial>;
using AdmissibleElement = Element<AdmissibleWord>;

// Complete, sorted basis of degree d.
std::vector<AdmissibleWord> admissible_basis(const OddPrime& p, std::uint64_t d);
std::vector<MilnorMonomial> milnor_basis(const OddPrime& p, std::uint64_t d);

MilnorElement milnor_product(const OddPrime& p, const MilnorMonomial& a, const MilnorMonomial& b);
// Throws std::invalid_argument on a prime mismatch.
MilnorElement milnor_product(const MilnorElement& a, const MilnorElement& b);

// Test hook: perturbs one Adem coefficient so the oracle cross-check has a
// failure path to exercise.
struct AdemOptions {
    bool inject_fault = false;
};

AdmissibleElement adem_straighten(const OddPrime& p, const Word& word, AdemOptions opts = {});
// Product in the admissible basis: concatenate and straighten.
AdmissibleElement admissible_product(const AdmissibleElement& a, const AdmissibleElement& b, AdemOptions opts = {});

// Both directions require a homogeneous element (std::invalid_argument otherwise).
MilnorElement to_milnor(const AdmissibleElement& x);
AdmissibleElement to_admissible(const MilnorElement& x);

struct ExcessDegree {
    long long excess;
    std::uint64_t degree;
};
ExcessDegree excess_and_degree(const AdmissibleWord& w, const OddPrime& p);

// Q_j by the commutator recursion, straightened in the admissible basis.
AdmissibleElement q_operation_admissible(const OddPrime& p, std::uint32_t j, AdemOptions opts = {});
// Q_j as the Milnor monomial Q(j).
MilnorElement q_operation_milnor(const OddPrime& p, std::uint32_t j);

// Text forms accepted by the CLI: "b P^3 P^1", "2 P^2 - b P^1", "Q(0,1) P(1)".
Word parse_word(std::string_view text);
AdmissibleElement parse_admissible(const OddPrime& p, std::string_view text);
MilnorElement parse_milnor(const OddPrime& p, std::string_view text);

}  // namespace bpu::steenrod
