// bpucheck: command-line front end for the verification checks.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpu/checks.hpp"
#include "bpu/finite_group.hpp"
#include "bpu/group_cohomology.hpp"
#include "bpu/pu_matrices.hpp"
#include "bpu/steenrod.hpp"

namespace {

using namespace bpu;
using json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;

struct Options {
    std::uint32_t p = 3;
    std::size_t n = 6;
    unsigned k = 0;
    int max_dim = -1;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string caps;
    bool timings = false;
    bool inject_fault = false;
};

checks::CheckParams to_params(const Options& o)
{
    checks::CheckParams c;
    c.p = o.p;
    c.n = o.n;
    c.k = o.k;
    if (o.max_dim >= 0)
        c.max_dim = o.max_dim;
    c.seed = o.seed;
    c.inject_adem_fault = o.inject_fault;
    if (const char* env = std::getenv("BPUCHECK_CAPS"))
        c.caps.apply_overrides(env);
    c.caps.apply_overrides(o.caps);
    return c;
}

int run_selection(const std::vector<std::string>& ids, const Options& o)
{
    const checks::Format f = checks::parse_format(o.format);
    const auto results = checks::run_checks(ids, to_params(o));
    std::cout << checks::emit_report(results, f, o.timings);
    return checks::exit_code(results);
}

void print_json(const json& j)
{
    std::cout << j.dump(2) << "\n";
}

std::vector<long long> parse_list(const std::string& text)
{
    std::vector<long long> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size())
            throw checks::UsageError("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int groupcoh_cyclic(const Options& o, const std::string& matrix_text, int deg, std::optional<long long> modulus)
{
    if (o.n < 1)
        throw checks::UsageError("--n must be positive");
    if (deg < 0)
        throw checks::UsageError("--deg must be nonnegative");
    if (modulus && *modulus < 0)
        throw checks::UsageError("--modulus must be nonnegative");
    std::vector<long long> entries;
    try {
        entries = parse_list(matrix_text);
    } catch (const std::logic_error&) {
        throw checks::UsageError("--matrix must be comma-separated integers");
    }
    std::size_t g = 0;
    while (g * g < entries.size())
        ++g;
    if (g == 0 || g * g != entries.size())
        throw checks::UsageError("--matrix needs g*g entries");
    IntMatrix a(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            a(i, j) = static_cast<long>(entries[i * g + j]);
    const Integer m = modulus ? Integer(static_cast<long>(*modulus)) : Integer(static_cast<unsigned long>(o.n));
    const auto module = m == 0
                            ? groupcoh::TwistedCyclicModule(o.n, IntMatrix(0, g), a)
                            : groupcoh::TwistedCyclicModule::on_cyclic_power(o.n, m, a);
    json out;
    out["n"] = o.n;
    out["module"] = module.group().to_string();
    out["degree"] = deg;
    out["cohomology"] = groupcoh::cyclic_cohomology(module, deg).to_string();
    out["invariants"] = groupcoh::invariants(module).to_string();
    out["coinvariants"] = groupcoh::coinvariants(module).to_string();
    print_json(out);
    return 0;
}

int steenrod_mul(const Options& o, const std::string& a, const std::string& b, const std::string& basis)
{
    const steenrod::OddPrime p(o.p);
    json out;
    if (basis == "milnor") {
        out["product"] = steenrod::milnor_product(steenrod::parse_milnor(p, a), steenrod::parse_milnor(p, b)).to_string();
    } else if (basis == "admissible") {
        out["product"] = steenrod::admissible_product(steenrod::parse_admissible(p, a), steenrod::parse_admissible(p, b),
                                                      {o.inject_fault})
                             .to_string();
    } else {
        throw checks::UsageError("--basis must be milnor or admissible");
    }
    out["basis"] = basis;
    print_json(out);
    return 0;
}

int steenrod_convert(const Options& o, const std::string& x, const std::string& to)
{
    const steenrod::OddPrime p(o.p);
    json out;
    if (to == "milnor")
        out["milnor"] = steenrod::to_milnor(steenrod::parse_admissible(p, x)).to_string();
    else if (to == "admissible")
        out["admissible"] = steenrod::to_admissible(steenrod::parse_milnor(p, x)).to_string();
    else
        throw checks::UsageError("--to must be milnor or admissible");
    print_json(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification checks for the BP cohomology computations"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--p", o.p, "odd prime");
    app.add_option("--n", o.n, "matrix size / group parameter");
    app.add_option("--k", o.k, "y-class index");
    app.add_option("--max-dim", o.max_dim, "degree or dimension bound");
    app.add_option("--seed", o.seed, "seed for sampled checks");
    app.add_option("--format", o.format, "json or md");
    app.add_option("--caps", o.caps, "cap overrides, e.g. steenrod3=80,group=128");
    app.add_flag("--timings", o.timings, "include elapsed_ms in reports");
    app.add_flag("--inject-adem-fault", o.inject_fault, "perturb one Adem coefficient");

    std::vector<std::string> ids;
    auto* verify = app.add_subcommand("verify", "run named checks (or 'all')");
    verify->add_option("checks", ids, "check ids");
    app.add_subcommand("list", "print check ids");
    app.add_subcommand("y-class", "filtered expansion of Q_{k+1} on x1");

    auto* st = app.add_subcommand("steenrod", "Steenrod algebra arithmetic");
    st->require_subcommand(1);
    std::string a, b, basis = "milnor", to = "admissible";
    auto* mul = st->add_subcommand("mul", "product of two elements");
    mul->add_option("a", a)->required();
    mul->add_option("b", b)->required();
    mul->add_option("--basis", basis, "milnor or admissible");
    auto* straighten = st->add_subcommand("straighten", "Adem-straighten a word");
    straighten->add_option("word", a)->required();
    auto* convert = st->add_subcommand("convert", "change of basis");
    convert->add_option("element", a)->required();
    convert->add_option("--to", to, "milnor or admissible");

    auto* em = app.add_subcommand("em", "cohomology chart");
    em->require_subcommand(1);
    auto* chart = em->add_subcommand("chart", "ranks and integral groups");

    auto* gc = app.add_subcommand("groupcoh", "group cohomology");
    gc->require_subcommand(1);
    std::string matrix = "1";
    int deg = 0;
    std::optional<long long> modulus;
    auto* cyclic = gc->add_subcommand("cyclic", "H^s(C_n; Z_m^g) with a twisted action");
    cyclic->add_option("--matrix", matrix, "row-major action matrix, comma-separated")->required();
    cyclic->add_option("--deg", deg, "cohomological degree");
    cyclic->add_option("--modulus", modulus, "coefficient modulus m (0 for Z^g); defaults to n");
    auto* vprime = gc->add_subcommand("vprime", "low corner of the spectral sequence for V'_n");

    auto* pu = app.add_subcommand("pu", "matrices alpha', beta'");
    pu->require_subcommand(1);
    auto* relations = pu->add_subcommand("verify-relations", "defining relations");
    auto* table = pu->add_subcommand("table", "multiplication table of V'_n as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed())
            return run_selection(ids, o);
        if (app.got_subcommand("list")) {
            for (const auto& id : checks::check_ids())
                std::cout << id << "\n";
            return 0;
        }
        if (app.got_subcommand("y-class"))
            return run_selection({"y-class"}, o);
        if (mul->parsed())
            return steenrod_mul(o, a, b, basis);
        if (straighten->parsed()) {
            const steenrod::OddPrime p(o.p);
            print_json({{"admissible", steenrod::adem_straighten(p, steenrod::parse_word(a), {o.inject_fault}).to_string()}});
            return 0;
        }
        if (convert->parsed())
            return steenrod_convert(o, a, to);
        if (chart->parsed()) {
            const checks::CheckParams c = to_params(o);
            const int d = o.max_dim >= 0 ? o.max_dim : static_cast<int>(2 * o.p + 5);
            std::cout << checks::emit_chart(o.p, d, checks::parse_format(o.format), c.caps);
            return 0;
        }
        if (cyclic->parsed())
            return groupcoh_cyclic(o, matrix, deg, modulus);
        if (vprime->parsed())
            return run_selection({"phi-action", "lhs-corner", "bv-kunneth", "lemma34"}, o);
        if (relations->parsed())
            return run_selection({"pu-relations"}, o);
        if (table->parsed()) {
            const checks::CheckParams c = to_params(o);
            if (o.n < 2 || o.n * o.n * o.n > c.caps.group_order)
                throw checks::UsageError("--n: n^3 must not exceed the group order cap " +
                                         std::to_string(c.caps.group_order));
            std::cout << bpu::pu::enumerate_group(o.n, c.caps.group_order).table.to_json().dump(2) << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
