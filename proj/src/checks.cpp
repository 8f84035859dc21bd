#include "bpu/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "bpu/em_chart.hpp"
#include "bpu/group_cohomology.hpp"
#include "bpu/pu_matrices.hpp"
#include "bpu/steenrod.hpp"
#include "bpu/zmodule.hpp"

namespace bpu::checks {

using json = nlohmann::ordered_json;
using steenrod::AdmissibleElement;
using steenrod::MilnorElement;
using steenrod::MilnorMonomial;
using steenrod::OddPrime;

namespace {

struct Outcome {
    Status status;
    json details;
};

Outcome pass(json details)
{
    return {Status::pass, std::move(details)};
}

Outcome fail(json details, json counterexample)
{
    details["counterexample"] = std::move(counterexample);
    return {Status::fail, std::move(details)};
}

json group_json(const FgAbGroup& g)
{
    json j;
    j["free_rank"] = g.free_rank();
    json t = json::array();
    for (const auto& d : g.torsion())
        t.push_back(d.fits_slong_p() ? json(d.get_si()) : json(d.get_str()));
    j["torsion"] = t;
    return j;
}

json integer_json(const Integer& v)
{
    return v.fits_slong_p() ? json(v.get_si()) : json(v.get_str());
}

json matrix_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.push_back(integer_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

Integer as_integer(std::size_t v)
{
    return Integer(static_cast<unsigned long>(v));
}

std::uint64_t steenrod_bound(const CheckParams& c)
{
    if (c.max_dim)
        return static_cast<std::uint64_t>(*c.max_dim);
    return c.p == 3 ? 40 : 30;
}

int chart_bound(const CheckParams& c)
{
    return c.max_dim ? *c.max_dim : static_cast<int>(4 * c.p * c.p);
}

// ---------------------------------------------------------------------------

Outcome check_lemma21(const CheckParams& c)
{
    const OddPrime p(c.p);
    const em::ChartReport r = em::verify_lemma21(p);
    json details;
    details["max_dim"] = r.max_dim;
    json groups;
    for (int d = 0; d <= 2 * static_cast<int>(c.p) + 4; ++d)
        groups[std::to_string(d)] = group_json(r.integral.groups.at(d));
    details["groups"] = groups;
    details["mod_p_ranks"] = r.integral.mod_p_rank;
    details["class_at_2p_plus_2"] = r.class_at_2p2;
    if (r.pass)
        return pass(details);
    std::vector<int> undetermined;
    for (int d : r.mismatches) {
        if (!r.integral.certified[static_cast<std::size_t>(d)]) {
            undetermined.push_back(d);
            continue;
        }
        return fail(details, {{"dimension", d},
                              {"expected", group_json(r.expected.at(d))},
                              {"actual", group_json(r.integral.groups.at(d))}});
    }
    if (undetermined.empty())
        return fail(details, {{"dimension", 2 * c.p + 2}, {"expected_class", "b1"}, {"actual_class", r.class_at_2p2}});
    details["higher_torsion_undetermined"] = undetermined;
    return {Status::undetermined, details};
}

Outcome check_y_class(const CheckParams& c)
{
    const OddPrime p(c.p);
    const steenrod::AdmissibleWord word = em::canonical_y_word(p, c.k);
    json details;
    details["word"] = word.to_string();
    details["degree"] = word.degree(p);
    details["excess"] = word.excess(p);
    details["target_dim"] = 3 + word.degree(p);
    try {
        const em::YClassExpansion y = em::y_class_filtered_expansion(p, c.k);
        details["q_admissible"] = y.q.to_string();
        details["dropped_trailing_beta"] = y.dropped_trailing_beta;
        details["dropped_excess"] = y.dropped_excess;
        details["survivors"] = y.survivors.to_string();
        const bool shape = word.excess(p) == 3 && word.degree(p) == 2 * p.power(c.k + 1) - 1;
        if (y.pass && shape) {
            details["summary"] = word.to_string() + ", coeff 1";
            return pass(details);
        }
        return fail(details, {{"expected", word.to_string()}, {"actual", y.survivors.to_string()}});
    } catch (const std::runtime_error& e) {
        return fail(details, {{"error", e.what()}});
    }
}

Outcome check_phi_action(const CheckParams& c)
{
    const std::size_t n = c.n;
    const pu::PhiAction phi = pu::extract_phi_action(n);
    json details;
    details["matrix_mod_n"] = matrix_json(phi.matrix);
    IntMatrix power = IntMatrix::identity(2);
    for (std::size_t i = 0; i < n; ++i)
        power = power * phi.matrix;
    bool identity = true;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            identity = identity && (power(i, j) - (i == j ? 1 : 0)) % as_integer(n) == 0;
    const auto module = groupcoh::TwistedCyclicModule::on_cyclic_power(n, as_integer(n), phi.matrix);
    const FgAbGroup inv = groupcoh::invariants(module);
    const FgAbGroup coinv = groupcoh::coinvariants(module);
    details["power_n_is_identity"] = identity;
    details["invariants"] = group_json(inv);
    details["coinvariants"] = group_json(coinv);
    const FgAbGroup zn = FgAbGroup::cyclic(as_integer(n));
    if (phi.matches_expected && identity && inv == zn && coinv == zn)
        return pass(details);
    return fail(details, {{"expected", "[[1,-1],[0,1]] mod n with invariants Z_n"},
                          {"matrix", matrix_json(phi.matrix)},
                          {"invariants", inv.to_string()}});
}

Outcome check_lhs_corner(const CheckParams& c)
{
    const groupcoh::LhsCornerReport r = groupcoh::lhs_corner_Vprime(c.n);
    json details, e2;
    for (const auto& [st, g] : r.e2)
        e2[std::to_string(st.first) + "," + std::to_string(st.second)] = group_json(g);
    details["e2"] = e2;
    details["e02_contragredient"] = group_json(r.e02_contragredient);
    details["ses_orders"] = {integer_json(r.ses_sub), integer_json(r.ses_total), integer_json(r.ses_quotient)};
    if (r.pass)
        return pass(details);
    return fail(details, {{"expected_ses_orders", {c.n, c.n * c.n, c.n}},
                          {"e20", r.e2.at({2, 0}).to_string()},
                          {"e11", r.e2.at({1, 1}).to_string()},
                          {"e02", r.e02_phi.to_string()}});
}

Outcome check_bv_kunneth(const CheckParams& c)
{
    const FgAbGroup zn = FgAbGroup::cyclic(as_integer(c.n));
    const std::vector<FgAbGroup> expected{FgAbGroup::free(1), FgAbGroup::zero(), zn + zn, zn, zn + zn + zn};
    json details, groups;
    std::optional<int> bad;
    for (int d = 0; d <= 4; ++d) {
        const FgAbGroup g = groupcoh::bv_cohomology(c.n, d);
        groups[std::to_string(d)] = group_json(g);
        if (!bad && !(g == expected[static_cast<std::size_t>(d)]))
            bad = d;
    }
    details["groups"] = groups;
    if (!bad)
        return pass(details);
    return fail(details, {{"dimension", *bad}, {"expected", group_json(expected[static_cast<std::size_t>(*bad)])}});
}

Outcome check_lemma34(const CheckParams& c)
{
    const groupcoh::Lemma34Report r = groupcoh::lemma34_bookkeeping(c.n);
    json details, coh = json::array();
    for (const auto& g : r.k_cohomology)
        coh.push_back(group_json(g));
    details["k_cohomology"] = coh;
    details["e11"] = group_json(r.e11);
    details["e20"] = group_json(r.e20);
    details["e_inf02_order"] = integer_json(r.e_inf02_order);
    details["e02_order"] = integer_json(r.e02_order);
    details["d3_zero"] = r.d3_zero;
    details["e_inf30"] = group_json(r.e_inf30);
    details["h3_bv_order"] = integer_json(r.h3_bv_order);
    if (r.pass)
        return pass(details);
    return fail(details, {{"expected_e_inf30", group_json(FgAbGroup::cyclic(as_integer(c.n)))},
                          {"actual_e_inf30", group_json(r.e_inf30)}});
}

Outcome check_group_oracle(const CheckParams& c)
{
    json details, per_n;
    for (std::size_t m = 2; m * m * m <= c.caps.group_order; ++m) {
        const FgAbGroup h2 = groupcoh::h2_Vprime_via_abelianization(m, c.caps.group_order);
        const Integer ses = groupcoh::lhs_corner_Vprime(m).ses_total;
        const FgAbGroup zm = FgAbGroup::cyclic(as_integer(m));
        per_n[std::to_string(m)] = {{"h2", group_json(h2)}, {"ses_order", integer_json(ses)}};
        if (!(h2 == zm + zm) || h2.order() != ses) {
            details["by_n"] = per_n;
            return fail(details, {{"n", m}, {"h2", h2.to_string()}, {"ses_order", integer_json(ses)}});
        }
    }
    details["by_n"] = per_n;
    return pass(details);
}

Outcome check_pu_relations(const CheckParams& c)
{
    const std::size_t n = c.n;
    const pu::RelationsReport r = pu::verify_relations(n);
    json details;
    details["commutation"] = r.commutation;
    details["alpha_order"] = r.alpha_order;
    details["beta_order"] = r.beta_order;
    details["conjugation"] = r.conjugation;
    details["monomial_closed"] = r.monomial_closed;

    const pu::Generators g = pu::build_generators(n);
    const auto det_a = *g.alpha.monomial_determinant();
    const auto det_b = *g.beta.monomial_determinant();
    const auto det_ab = *(g.alpha * g.beta).monomial_determinant();
    const long long tri = static_cast<long long>(n * (n - 1) / 2);
    const bool det_ok = det_b == pu::CycloElt::monomial(n, tri) && det_ab == det_a * det_b;
    details["det_multiplicative"] = det_ok;

    bool group_ok = true;
    if (n * n * n <= c.caps.group_order) {
        const pu::VprimeGroup v = pu::enumerate_group(n, c.caps.group_order);
        details["group_order"] = v.table.order();
        details["group_checks"] = v.pass();
        group_ok = v.pass();
    } else {
        details["group_enumeration"] = "skipped: n^3 above the group order cap";
    }
    if (r.pass() && det_ok && group_ok)
        return pass(details);
    json failures = r.failures;
    if (!det_ok)
        failures.push_back("determinant not multiplicative");
    if (!group_ok)
        failures.push_back("group enumeration checks failed");
    return fail(details, {{"failures", failures}});
}

Outcome check_steenrod_oracle(const CheckParams& c)
{
    const OddPrime p(c.p);
    const std::uint64_t bound = steenrod_bound(c);
    const steenrod::AdemOptions opts{c.inject_adem_fault};
    std::vector<std::vector<MilnorMonomial>> basis;
    std::vector<std::vector<AdmissibleElement>> letters;
    for (std::uint64_t d = 0; d <= bound; ++d) {
        basis.push_back(steenrod::milnor_basis(p, d));
        letters.emplace_back();
        for (const auto& m : basis.back())
            letters.back().push_back(steenrod::to_admissible(MilnorElement(p, m)));
    }
    std::size_t pairs = 0;
    json details;
    details["max_degree"] = bound;
    for (std::uint64_t da = 0; da <= bound; ++da)
        for (std::uint64_t db = 0; da + db <= bound; ++db)
            for (std::size_t i = 0; i < basis[da].size(); ++i)
                for (std::size_t j = 0; j < basis[db].size(); ++j) {
                    ++pairs;
                    const AdmissibleElement via_milnor =
                        steenrod::to_admissible(steenrod::milnor_product(p, basis[da][i], basis[db][j]));
                    const AdmissibleElement via_adem = steenrod::admissible_product(letters[da][i], letters[db][j], opts);
                    if (!(via_milnor == via_adem)) {
                        details["pairs_checked"] = pairs;
                        return fail(details, {{"a", basis[da][i].to_string()},
                                              {"b", basis[db][j].to_string()},
                                              {"milnor", via_milnor.to_string()},
                                              {"adem", via_adem.to_string()}});
                    }
                }
    details["pairs_checked"] = pairs;
    return pass(details);
}

Outcome check_steenrod_bases(const CheckParams& c)
{
    const OddPrime p(c.p);
    const std::uint64_t bound = steenrod_bound(c);
    json details, counts = json::array();
    details["max_degree"] = bound;
    for (std::uint64_t d = 0; d <= bound; ++d) {
        const auto adm = steenrod::admissible_basis(p, d);
        const auto mil = steenrod::milnor_basis(p, d);
        counts.push_back(adm.size());
        if (adm.size() != mil.size()) {
            details["counts"] = counts;
            return fail(details, {{"degree", d}, {"admissible", adm.size()}, {"milnor", mil.size()}});
        }
        for (const auto& m : mil) {
            const MilnorElement x(p, m);
            if (!(steenrod::to_milnor(steenrod::to_admissible(x)) == x))
                return fail(details, {{"round_trip", m.to_string()}});
        }
        for (const auto& w : adm) {
            const AdmissibleElement x(p, w);
            if (!(steenrod::to_admissible(steenrod::to_milnor(x)) == x))
                return fail(details, {{"round_trip", w.to_string()}});
        }
    }
    details["counts"] = counts;
    return pass(details);
}

Outcome check_steenrod_assoc(const CheckParams& c)
{
    const OddPrime p(c.p);
    const std::uint64_t bound = steenrod_bound(c);
    std::vector<MilnorMonomial> all;
    for (std::uint64_t d = 0; d <= bound; ++d)
        for (auto& m : steenrod::milnor_basis(p, d))
            all.push_back(std::move(m));
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    constexpr int kSamples = 200;
    json details;
    details["max_degree"] = bound;
    int checked = 0;
    for (int tries = 0; checked < kSamples && tries < 100 * kSamples; ++tries) {
        const auto& a = all[pick(rng)];
        const auto& b = all[pick(rng)];
        const auto& e = all[pick(rng)];
        if (a.degree(p) + b.degree(p) + e.degree(p) > bound)
            continue;
        ++checked;
        const MilnorElement ab = steenrod::milnor_product(p, a, b);
        const MilnorElement left = steenrod::milnor_product(ab, MilnorElement(p, e));
        const MilnorElement right = steenrod::milnor_product(MilnorElement(p, a), steenrod::milnor_product(p, b, e));
        const bool degree_ok = ab.is_zero() || *ab.degree() == a.degree(p) + b.degree(p);
        if (!(left == right) || !degree_ok)
            return fail(details, {{"a", a.to_string()}, {"b", b.to_string()}, {"c", e.to_string()},
                                  {"left", left.to_string()}, {"right", right.to_string()}});
    }
    details["triples_checked"] = checked;
    return pass(details);
}

Outcome check_q_exterior(const CheckParams& c)
{
    const OddPrime p(c.p);
    constexpr std::uint32_t kTop = 3;
    json details;
    for (std::uint32_t i = 0; i <= kTop; ++i)
        for (std::uint32_t j = 0; j <= kTop; ++j) {
            const MilnorElement qi = steenrod::q_operation_milnor(p, i), qj = steenrod::q_operation_milnor(p, j);
            const MilnorElement s = steenrod::milnor_product(qi, qj) + steenrod::milnor_product(qj, qi);
            if (!s.is_zero())
                return fail(details, {{"i", i}, {"j", j}, {"anticommutator", s.to_string()}});
        }
    // Ascending products are the Milnor monomials Q(E).
    for (std::uint32_t mask = 1; mask < (1u << (kTop + 1)); ++mask) {
        std::vector<std::uint32_t> e;
        MilnorElement prod(p, MilnorMonomial());
        for (std::uint32_t i = 0; i <= kTop; ++i)
            if (mask & (1u << i)) {
                e.push_back(i);
                prod = steenrod::milnor_product(prod, steenrod::q_operation_milnor(p, i));
            }
        const MilnorElement want(p, MilnorMonomial(e, {}));
        if (!(prod == want))
            return fail(details, {{"product", want.to_string()}, {"actual", prod.to_string()}});
    }
    // The commutator recursion, straightened, agrees with Q(j) within the degree cap.
    json recursion = json::array();
    for (std::uint32_t j = 0; 2 * p.power(j) - 1 <= c.caps.steenrod_cap(c.p); ++j) {
        const AdmissibleElement rec = steenrod::q_operation_admissible(p, j, {c.inject_adem_fault});
        const AdmissibleElement conv = steenrod::to_admissible(steenrod::q_operation_milnor(p, j));
        if (!(rec == conv))
            return fail(details, {{"j", j}, {"recursion", rec.to_string()}, {"conversion", conv.to_string()}});
        recursion.push_back(j);
    }
    details["recursion_checked"] = recursion;
    details["max_index"] = kTop;
    return pass(details);
}

Outcome check_bockstein_square(const CheckParams& c)
{
    const OddPrime p(c.p);
    const int dmax = chart_bound(c);
    const em::EmChart chart = em::build_chart(p, dmax);
    json details;
    details["max_dim"] = dmax;
    for (int d = 0; d + 2 <= dmax; ++d)
        if (!(em::bockstein_d1(chart, d + 1) * em::bockstein_d1(chart, d)).is_zero())
            return fail(details, {{"dimension", d}});
    json gens = json::array();
    for (const auto& g : chart.generators())
        gens.push_back({{"label", g.label}, {"dim", g.dim}});
    details["generators"] = gens;
    return pass(details);
}

Outcome check_smith_sample(const CheckParams& c)
{
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> size(1, 5), entry(-9, 9), order(0, 12);
    constexpr int kSamples = 200;
    json details;
    for (int s = 0; s < kSamples; ++s) {
        const std::size_t r = static_cast<std::size_t>(size(rng)), k = static_cast<std::size_t>(size(rng));
        IntMatrix a(r, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j)
                a(i, j) = entry(rng);
        const SmithDecomposition snf = smith_normal_form(a);
        const auto diag = snf.diagonal();
        bool ok = snf.u * a * snf.v == snf.d && snf.d.is_diagonal() && abs(snf.u.determinant()) == 1 &&
                  abs(snf.v.determinant()) == 1;
        for (std::size_t i = 0; ok && i + 1 < diag.size(); ++i)
            ok = diag[i] >= 0 && (diag[i + 1] == 0 || (diag[i] != 0 && diag[i + 1] % diag[i] == 0));
        // Appending a combination of existing relations leaves the cokernel alone.
        IntMatrix extra(1, k);
        for (std::size_t i = 0; i < r; ++i) {
            const int coef = entry(rng);
            for (std::size_t j = 0; j < k; ++j)
                extra(0, j) += coef * a(i, j);
        }
        ok = ok && cokernel_group(a) == cokernel_group(a.stacked(extra));
        const FgAbGroup g = FgAbGroup::from_cyclic_orders(0, {order(rng), order(rng)});
        const FgAbGroup h = FgAbGroup::from_cyclic_orders(0, {order(rng), order(rng)});
        ok = ok && pairing_functor(Pairing::tensor, g, h) == pairing_functor(Pairing::tensor, h, g) &&
             pairing_functor(Pairing::tor, g, h) == pairing_functor(Pairing::tor, h, g);
        if (!ok)
            return fail(details, {{"sample", s}, {"matrix", matrix_json(a)}, {"g", g.to_string()}, {"h", h.to_string()}});
    }
    details["samples"] = kSamples;
    return pass(details);
}

// ---------------------------------------------------------------------------

struct CheckSpec {
    std::string id;
    std::function<json(const CheckParams&)> params;
    std::function<void(const CheckParams&)> validate;
    std::function<Outcome(const CheckParams&)> run;
};

void require_prime(const CheckParams& c)
{
    try {
        OddPrime p(c.p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--p: ") + e.what());
    }
}

void require_n(const CheckParams& c)
{
    if (c.n < 2 || c.n > 1000)
        throw UsageError("--n must lie in 2..1000");
}

void require_steenrod_bound(const CheckParams& c)
{
    require_prime(c);
    const std::uint64_t cap = c.caps.steenrod_cap(c.p);
    if (c.max_dim && *c.max_dim < 0)
        throw UsageError("--max-dim must be nonnegative");
    if (steenrod_bound(c) > cap)
        throw UsageError("Steenrod degree " + std::to_string(steenrod_bound(c)) + " exceeds the cap " +
                         std::to_string(cap) + " at p = " + std::to_string(c.p));
}

void require_chart_bound(const CheckParams& c, int dim)
{
    require_prime(c);
    if (dim < 3)
        throw UsageError("chart dimension must be at least 3");
    if (dim > c.caps.chart_dim)
        throw UsageError("chart dimension " + std::to_string(dim) + " exceeds the cap " +
                         std::to_string(c.caps.chart_dim));
}

const std::vector<CheckSpec>& registry()
{
    static const std::vector<CheckSpec> specs = [] {
        auto p_only = [](const CheckParams& c) { return json{{"p", c.p}}; };
        auto n_only = [](const CheckParams& c) { return json{{"n", c.n}}; };
        auto p_degree = [](const CheckParams& c) { return json{{"p", c.p}, {"max_degree", steenrod_bound(c)}}; };
        auto none = [](const CheckParams&) {};
        std::vector<CheckSpec> s;
        s.push_back({"lemma21", p_only,
                     [](const CheckParams& c) { require_chart_bound(c, 2 * static_cast<int>(c.p) + 5); },
                     check_lemma21});
        s.push_back({"y-class", [](const CheckParams& c) { return json{{"p", c.p}, {"k", c.k}}; },
                     [](const CheckParams& c) {
                         require_prime(c);
                         const OddPrime p(c.p);
                         const std::uint64_t cap = c.caps.steenrod_cap(c.p);
                         if (c.k > 20 || 2 * p.power(c.k + 1) - 1 > cap)
                             throw UsageError("--k: degree of Q_{k+1} exceeds the Steenrod degree cap " +
                                              std::to_string(cap));
                     },
                     check_y_class});
        s.push_back({"phi-action", n_only, [](const CheckParams& c) { require_n(c); }, check_phi_action});
        s.push_back({"lhs-corner", n_only, [](const CheckParams& c) { require_n(c); }, check_lhs_corner});
        s.push_back({"bv-kunneth", n_only, [](const CheckParams& c) { require_n(c); }, check_bv_kunneth});
        s.push_back({"lemma34", n_only, [](const CheckParams& c) { require_n(c); }, check_lemma34});
        s.push_back({"group-oracle", [](const CheckParams& c) { return json{{"max_order", c.caps.group_order}}; }, none,
                     check_group_oracle});
        s.push_back({"pu-relations", n_only, [](const CheckParams& c) { require_n(c); }, check_pu_relations});
        s.push_back({"steenrod-oracle",
                     [](const CheckParams& c) {
                         json j{{"p", c.p}, {"max_degree", steenrod_bound(c)}};
                         if (c.inject_adem_fault)
                             j["inject_adem_fault"] = true;
                         return j;
                     },
                     require_steenrod_bound, check_steenrod_oracle});
        s.push_back({"steenrod-bases", p_degree, require_steenrod_bound, check_steenrod_bases});
        s.push_back({"steenrod-assoc",
                     [](const CheckParams& c) {
                         return json{{"p", c.p}, {"max_degree", steenrod_bound(c)}, {"seed", c.seed}};
                     },
                     require_steenrod_bound, check_steenrod_assoc});
        s.push_back({"q-exterior", p_only, require_prime, check_q_exterior});
        s.push_back({"bockstein-square",
                     [](const CheckParams& c) { return json{{"p", c.p}, {"max_dim", chart_bound(c)}}; },
                     [](const CheckParams& c) { require_chart_bound(c, chart_bound(c)); }, check_bockstein_square});
        s.push_back({"smith-sample", [](const CheckParams& c) { return json{{"seed", c.seed}}; }, none,
                     check_smith_sample});
        return s;
    }();
    return specs;
}

}  // namespace

void Caps::apply_overrides(const std::string& spec)
{
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("cap override '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        unsigned long long value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("cap override '" + item + "' has a bad value");
        }
        if (key == "steenrod3" || key == "steenrod") {
            if (value > kSteenrodCeiling)
                throw UsageError("Steenrod degree cap above the ceiling " + std::to_string(kSteenrodCeiling));
            (key == "steenrod3" ? steenrod_degree_p3 : steenrod_degree) = value;
        } else if (key == "group") {
            if (value > kGroupCeiling)
                throw UsageError("group order cap above the ceiling " + std::to_string(kGroupCeiling));
            group_order = value;
        } else if (key == "chart") {
            if (value > static_cast<unsigned long long>(kChartCeiling))
                throw UsageError("chart dimension cap above the ceiling " + std::to_string(kChartCeiling));
            chart_dim = static_cast<int>(value);
        } else {
            throw UsageError("unknown cap '" + key + "'");
        }
    }
}

std::string status_name(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::undetermined:
        return "undetermined";
    }
    return "fail";
}

const std::vector<std::string>& check_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& s : registry())
            out.push_back(s.id);
        return out;
    }();
    return ids;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& selection, const CheckParams& params)
{
    std::vector<bool> chosen(registry().size(), false);
    for (const auto& id : selection) {
        if (id == "all") {
            chosen.assign(chosen.size(), true);
            continue;
        }
        auto it = std::find(check_ids().begin(), check_ids().end(), id);
        if (it == check_ids().end())
            throw UsageError("unknown check '" + id + "'");
        chosen[static_cast<std::size_t>(it - check_ids().begin())] = true;
    }
    for (std::size_t i = 0; i < chosen.size(); ++i)
        if (chosen[i])
            registry()[i].validate(params);

    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        if (!chosen[i])
            continue;
        const CheckSpec& spec = registry()[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = spec.run(params);
        const auto t1 = std::chrono::steady_clock::now();
        out.push_back({spec.id, spec.params(params), o.status, std::move(o.details),
                       std::chrono::duration<double, std::milli>(t1 - t0).count()});
    }
    return out;
}

int exit_code(const std::vector<CheckResult>& results)
{
    bool undetermined = false;
    for (const auto& r : results) {
        if (r.status == Status::fail)
            return 1;
        undetermined = undetermined || r.status == Status::undetermined;
    }
    return undetermined ? 3 : 0;
}

Format parse_format(const std::string& name)
{
    if (name == "json")
        return Format::json;
    if (name == "md")
        return Format::md;
    throw UsageError("--format must be json or md");
}

namespace {

std::string group_cell(const json& g, const std::string& free_symbol)
{
    std::vector<std::string> parts;
    const auto r = g.at("free_rank").get<std::size_t>();
    if (r == 1)
        parts.push_back(free_symbol);
    else if (r > 1)
        parts.push_back(free_symbol + "^" + std::to_string(r));
    for (const auto& t : g.at("torsion"))
        parts.push_back("Z_" + (t.is_string() ? t.get<std::string>() : std::to_string(t.get<long long>())));
    if (parts.empty())
        return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " + " + parts[i];
    return out;
}

}  // namespace

std::string emit_report(const std::vector<CheckResult>& results, Format format, bool timings)
{
    if (format == Format::json) {
        json doc;
        doc["schema"] = "bpucheck-report";
        doc["version"] = kSchemaVersion;
        json arr = json::array();
        for (const auto& r : results) {
            json j;
            j["check_id"] = r.check_id;
            j["params"] = r.params;
            j["status"] = status_name(r.status);
            j["details"] = r.details;
            if (timings)
                j["elapsed_ms"] = r.elapsed_ms;
            arr.push_back(j);
        }
        doc["results"] = arr;
        return doc.dump(2) + "\n";
    }

    std::ostringstream md;
    md << "# bpucheck report\n\nschema version " << kSchemaVersion << "\n\n";
    md << "| check | params | status |" << (timings ? " ms |" : "") << "\n";
    md << "|---|---|---|" << (timings ? "---|" : "") << "\n";
    for (const auto& r : results) {
        md << "| " << r.check_id << " | `" << r.params.dump() << "` | " << status_name(r.status) << " |";
        if (timings)
            md << ' ' << static_cast<long long>(r.elapsed_ms) << " |";
        md << "\n";
    }
    for (const auto& r : results) {
        md << "\n## " << r.check_id << ": " << status_name(r.status) << "\n\n";
        if (r.check_id == "lemma21" && r.details.contains("groups")) {
            const std::string p = std::to_string(r.params.at("p").get<unsigned>());
            md << "| dimension | group |\n|---|---|\n";
            for (const auto& [dim, g] : r.details.at("groups").items())
                md << "| " << dim << " | " << group_cell(g, "Z_(" + p + ")") << " |\n";
            md << "\n";
        }
        for (const auto& [key, value] : r.details.items()) {
            if (r.check_id == "lemma21" && key == "groups")
                continue;
            md << "- " << key << ": `" << (value.is_string() ? value.get<std::string>() : value.dump()) << "`\n";
        }
    }
    return md.str();
}

}  // namespace bpu::checks

namespace bpu::checks {

std::string emit_chart(std::uint32_t p, int max_dim, Format format, const Caps& caps)
{
    CheckParams c;
    c.p = p;
    c.caps = caps;
    require_chart_bound(c, max_dim);
    const OddPrime prime(p);
    const em::EmChart chart = em::build_chart(prime, max_dim);
    const em::IntegralChart integral = em::integral_reconstruct(chart);

    json doc;
    doc["schema"] = "bpu-em-chart";
    doc["version"] = kChartSchemaVersion;
    doc["p"] = p;
    doc["max_dim"] = max_dim;
    json gens = json::array();
    for (const auto& g : chart.generators())
        gens.push_back({{"label", g.label}, {"dim", g.dim}});
    doc["generators"] = gens;
    json dims = json::array();
    for (int d = 0; d <= max_dim; ++d) {
        json row;
        row["dim"] = d;
        row["mod_p_rank"] = chart.rank(d);
        json labels = json::array();
        for (const auto& m : chart.basis(d))
            labels.push_back(chart.label(m));
        row["basis"] = labels;
        if (d < max_dim) {
            row["group"] = group_json(integral.groups.at(d));
            row["certified"] = static_cast<bool>(integral.certified[static_cast<std::size_t>(d)]);
        }
        dims.push_back(row);
    }
    doc["dimensions"] = dims;
    if (format == Format::json)
        return doc.dump(2) + "\n";

    std::ostringstream md;
    md << "# chart p = " << p << ", max_dim = " << max_dim << "\n\nschema version " << kChartSchemaVersion << "\n\n";
    md << "| dimension | mod p rank | group | basis |\n|---|---|---|---|\n";
    const std::string free_symbol = "Z_(" + std::to_string(p) + ")";
    for (const auto& row : doc["dimensions"]) {
        std::string basis;
        for (const auto& l : row["basis"])
            basis += (basis.empty() ? "" : ", ") + l.get<std::string>();
        std::string group = row.contains("group") ? group_cell(row["group"], free_symbol) : "";
        if (row.contains("certified") && !row["certified"].get<bool>())
            group += " (uncertified)";
        md << "| " << row["dim"].get<int>() << " | " << row["mod_p_rank"].get<std::size_t>() << " | " << group
           << " | " << basis << " |\n";
    }
    return md.str();
}

}  // namespace bpu::checks
