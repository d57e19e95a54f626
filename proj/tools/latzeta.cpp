// latzeta: sublattice-counting zeta coefficients of binary quadratic forms,
// by enumeration and by closed formula.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "latzeta/latzeta.hpp"
#include "latzeta/report.hpp"

using namespace latzeta;
using nlohmann::json;

namespace {

/// Raised for invalid input; reported on one line with exit status 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct options {
    long long disc = 0;
    std::string form;
    std::size_t max = 300;
    std::string mode = "both";
    bool all_classes = false;
    bool json = false;
    bool csv = false;
    long long prime = 0;
    int k = 5;
    unsigned threads = 1;
};

std::size_t max_n_cap()
{
    if (char const * env = std::getenv("LATZETA_MAX_N")) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(env, &pos);
            if (pos == std::string(env).size() && v > 0)
                return std::size_t(v);
        } catch (std::exception const &) {
        }
        throw usage_error("LATZETA_MAX_N must be a positive integer, got '" + std::string(env) + "'");
    }
    return 10000;
}

void check_bound(std::size_t N)
{
    if (N < 1)
        throw usage_error("--max must be at least 1");
    std::size_t cap = max_n_cap();
    if (N > cap)
        throw usage_error("--max " + std::to_string(N) + " exceeds the cap " + std::to_string(cap) +
                          " (set LATZETA_MAX_N to raise it)");
}

bqf parse_form(std::string const & text, field_context const & ctx)
{
    static std::regex const re(R"(\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw usage_error("malformed form '" + text + "', expected a,b,c");
    bqf f;
    try {
        f = {std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3])};
    } catch (std::out_of_range const &) {
        throw usage_error("form coefficients out of range in '" + text + "'");
    }
    if (f.discriminant() != ctx.field().D)
        throw usage_error("form " + f.str() + " has discriminant " + to_string(f.discriminant()) + ", expected " +
                          to_string(ctx.field().D));
    if (!f.is_positive_definite())
        throw usage_error("form " + f.str() + " is not positive definite");
    if (!f.is_primitive())
        throw usage_error("form " + f.str() + " is not primitive");
    return f;
}

std::vector<bqf> selected_forms(options const & o, field_context const & ctx)
{
    if (o.all_classes)
        return ctx.group().elements();
    if (!o.form.empty())
        return {parse_form(o.form, ctx)};
    return {ctx.field().principal_form()};
}

std::vector<count_mode> selected_modes(options const & o)
{
    if (o.mode == "both")
        return {count_mode::sl, count_mode::gl};
    if (auto m = parse_mode(o.mode))
        return {*m};
    throw usage_error("--mode must be sl, gl or both");
}

double ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed6(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string group_name(std::vector<std::size_t> const & factors)
{
    if (factors.empty())
        return "1";
    std::string s;
    for (auto f : factors)
        s += (s.empty() ? "" : " x ") + std::string("Z/") + std::to_string(f);
    return s;
}

json classes_json(form_class_group const & G, std::vector<std::size_t> const & idx)
{
    auto a = json::array();
    for (auto i : idx)
        a.push_back(form_to_json(G.element(i)));
    return a;
}

std::string classes_text(form_class_group const & G, std::vector<std::size_t> const & idx)
{
    std::string s;
    for (auto i : idx)
        s += (s.empty() ? "" : " ") + G.element(i).str();
    return s.empty() ? "-" : s;
}

int cmd_classgroup(options const & o)
{
    field_context ctx(o.disc);
    auto const & G = ctx.group();
    auto const & subs = ctx.subs();
    std::vector<std::size_t> all(G.order());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    if (o.json) {
        json j;
        j["disc"] = o.disc;
        j["h"] = G.order();
        j["classes"] = classes_json(G, all);
        j["structure"] = G.invariant_factors();
        j["refl"] = classes_json(G, subs.refl);
        j["ram"] = classes_json(G, subs.ram);
        j["ortho"] = subs.ortho ? classes_json(G, *subs.ortho) : json(nullptr);
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "D = " << o.disc << "  h = " << G.order() << "  Cl ≅ " << group_name(G.invariant_factors()) << '\n'
              << "classes: " << classes_text(G, all) << '\n'
              << "2-torsion: " << classes_text(G, subs.refl) << '\n'
              << "ramified: " << classes_text(G, subs.ram) << '\n'
              << "orthogonal: " << (subs.ortho ? classes_text(G, *subs.ortho) : std::string("absent (d = 1 mod 4)"))
              << '\n';
    return 0;
}

int print_tables(options const & o, char const * source, bqf const & f, coefficient_table const & t)
{
    auto modes = selected_modes(o);
    if (o.json) {
        json j;
        j["disc"] = o.disc;
        j["form"] = form_to_json(f);
        j["N"] = t.N;
        j["source"] = source;
        for (auto m : modes)
            j[to_string(m)] = std::vector<std::int64_t>(t.get(m).begin() + 1, t.get(m).end());
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << (o.csv ? "m" : "# m");
    for (auto m : modes)
        std::cout << (o.csv ? "," : " ") << "a_" << to_string(m);
    std::cout << '\n';
    for (std::size_t n = 1; n <= t.N; ++n) {
        std::cout << n;
        for (auto m : modes)
            std::cout << (o.csv ? "," : " ") << t.get(m)[n];
        std::cout << '\n';
    }
    return 0;
}

int cmd_brute(options const & o)
{
    check_bound(o.max);
    field_context ctx(o.disc);
    selected_modes(o);
    bqf f = selected_forms(o, ctx).front();
    return print_tables(o, "brute", f, brute_coefficients(f, o.max, o.threads));
}

int cmd_formula(options const & o)
{
    check_bound(o.max);
    field_context ctx(o.disc);
    selected_modes(o);
    bqf f = selected_forms(o, ctx).front();
    return print_tables(o, "formula", f, formula_coefficients(ctx, f, o.max));
}

int cmd_verify(options const & o)
{
    check_bound(o.max);
    field_context ctx(o.disc);
    auto modes = selected_modes(o);
    std::vector<verification_report> reports;
    zeta_assembler za(ctx, o.max);
    for (auto const & f : selected_forms(o, ctx)) {
        auto t0 = std::chrono::steady_clock::now();
        auto bundle = za.bundle(ctx.group().index_of(f));
        coefficient_table formula{o.max, bundle.sl.to_integers(), bundle.gl.to_integers()};
        double t_formula = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto brute = brute_coefficients(f, o.max, o.threads);
        double t_brute = ms_since(t0);
        for (auto m : modes) {
            auto r = make_report(f, m, o.max, formula.get(m), brute.get(m));
            r.elapsed_ms_formula = t_formula;
            r.elapsed_ms_brute = t_brute;
            reports.push_back(std::move(r));
        }
    }
    bool ok = true;
    for (auto const & r : reports)
        ok = ok && r.ok();
    if (o.json) {
        auto a = json::array();
        for (auto const & r : reports)
            a.push_back(to_json(r));
        std::cout << a.dump() << '\n';
    } else if (o.csv) {
        for (auto const & r : reports) {
            if (reports.size() > 1)
                std::cout << "# disc=" << r.disc << ",form=" << r.form.str() << ",mode=" << to_string(r.mode) << '\n';
            write_csv(std::cout, r);
        }
    } else {
        for (auto const & r : reports) {
            std::cout << "D=" << r.disc << " form=" << r.form.str() << " mode=" << to_string(r.mode) << " N=" << r.N
                      << " mismatches=" << r.mismatches.size() << " formula_ms=" << fixed6(r.elapsed_ms_formula)
                      << " brute_ms=" << fixed6(r.elapsed_ms_brute) << '\n';
            for (auto const & x : r.mismatches)
                std::cout << "  m=" << x.m << " formula=" << x.formula << " brute=" << x.brute << '\n';
        }
        std::cout << (ok ? "all coefficients match" : "MISMATCH") << '\n';
    }
    return ok ? 0 : 1;
}

int cmd_euler(options const & o)
{
    check_bound(o.max);
    field_context ctx(o.disc);
    auto r = euler_product_holds(ctx, o.max);
    bool exceptional = ctx.field().w != 2;
    if (o.json) {
        json j;
        j["disc"] = o.disc;
        j["N"] = o.max;
        j["holds"] = r.multiplicative;
        j["witness"] = r.witness ? json(*r.witness) : json(nullptr);
        j["elementary_2"] = r.elementary_2;
        j["structure"] = r.invariant_factors;
        j["predicate_agrees"] = r.multiplicative == r.elementary_2;
        j["exceptional"] = exceptional;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "D = " << o.disc << ", m <= " << o.max << ": Euler product " << (r.multiplicative ? "holds" : "fails");
    if (r.witness)
        std::cout << ", witness m = " << *r.witness;
    std::cout << '\n'
              << "Cl ≅ " << group_name(r.invariant_factors) << ", every class squares to 1: "
              << (r.elementary_2 ? "yes" : "no") << '\n';
    if (exceptional)
        std::cout << "note: the criterion does not apply to D = -3, -4\n";
    else
        std::cout << "predicate agrees with multiplicativity: " << (r.multiplicative == r.elementary_2 ? "yes" : "no")
                  << '\n';
    return 0;
}

int cmd_localfactor(options const & o)
{
    field_context ctx(o.disc);
    if (!is_prime(o.prime))
        throw usage_error("--prime " + std::to_string(o.prime) + " is not prime");
    if (o.k < 0 || o.k > 40)
        throw usage_error("--k must lie in [0, 40]");
    auto kind = split_type(ctx.field(), o.prime).kind;
    auto v = local_factor(ctx, o.prime, o.k);
    if (o.json) {
        json j;
        j["disc"] = o.disc;
        j["p"] = o.prime;
        j["kind"] = to_string(kind);
        if (kind == split_kind::split)
            j["k_p"] = k_p(ctx, o.prime);
        j["coeffs"] = v;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "p = " << o.prime << " (" << to_string(kind) << ")";
    if (kind == split_kind::split)
        std::cout << ", k_p = " << k_p(ctx, o.prime);
    std::cout << '\n';
    for (std::size_t i = 0; i < v.size(); ++i)
        std::cout << "a+(p^" << i << ") = " << v[i] << '\n';
    return 0;
}

int cmd_residue(options const & o)
{
    check_bound(o.max);
    field_context ctx(o.disc);
    auto oracle = brute_coefficients(ctx.field().principal_form(), o.max, o.threads);
    auto r = residue_diagnostic(ctx, o.max, &oracle);
    if (o.json) {
        json j;
        j["disc"] = o.disc;
        j["N"] = o.max;
        j["diagnostic"] = true;
        j["class_sum"] = r.class_sum.str();
        j["class_sum_decimal"] = r.class_sum.convert_to<double>();
        j["L2"] = r.L2;
        j["residue"] = r.residue;
        j["doubling_ratio_sl"] = r.ratio_sl;
        j["doubling_ratio_gl"] = r.ratio_gl;
        std::cout << j.dump() << '\n';
        return 0;
    }
    std::cout << "DIAGNOSTIC (no tail bound)\n"
              << "sum_{n<=" << o.max << "} |S(n)|/n^2 = " << fixed6(r.class_sum.convert_to<double>()) << " ("
              << r.class_sum.str() << ")\n"
              << "L(2, chi_D) ~ " << fixed6(r.L2) << '\n'
              << "residue at s=2 ~ " << fixed6(r.residue) << '\n'
              << "s+_" << o.max << " / s+_" << o.max / 2 << " = " << fixed6(r.ratio_sl) << '\n'
              << "s_" << o.max << " / s_" << o.max / 2 << " = " << fixed6(r.ratio_gl) << '\n';
    return 0;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Sublattice-counting zeta functions of binary quadratic forms"};
    app.require_subcommand(1);
    options o;

    auto add_disc = [&](CLI::App * sc) { sc->add_option("--disc", o.disc, "fundamental discriminant D < 0")->required(); };
    auto add_max = [&](CLI::App * sc) { sc->add_option("--max", o.max, "truncation bound N")->capture_default_str(); };
    auto add_out = [&](CLI::App * sc) {
        auto j = sc->add_flag("--json", o.json, "JSON output");
        auto c = sc->add_flag("--csv", o.csv, "CSV output");
        j->excludes(c);
    };
    auto add_table = [&](CLI::App * sc) {
        sc->add_option("--form", o.form, "form a,b,c of discriminant D (default: principal form)");
        sc->add_option("--mode", o.mode, "sl, gl or both")->capture_default_str();
        sc->add_option("--threads", o.threads, "worker threads for the enumeration")->capture_default_str();
    };

    auto classgroup = app.add_subcommand("classgroup", "class group, subgroups and structure");
    add_disc(classgroup);
    classgroup->add_flag("--json", o.json, "JSON output");

    auto brute = app.add_subcommand("brute", "coefficients by sublattice enumeration");
    add_disc(brute);
    add_max(brute);
    add_out(brute);
    add_table(brute);

    auto formula = app.add_subcommand("formula", "coefficients from the closed formulas");
    add_disc(formula);
    add_max(formula);
    add_out(formula);
    add_table(formula);

    auto verify = app.add_subcommand("verify", "compare formula and enumeration");
    add_disc(verify);
    add_max(verify);
    add_out(verify);
    add_table(verify);
    verify->add_flag("--all-classes", o.all_classes, "verify every class of discriminant D");

    auto euler = app.add_subcommand("euler", "Euler-product test for the proper counts");
    add_disc(euler);
    add_max(euler);
    euler->add_flag("--json", o.json, "JSON output");

    auto localfactor = app.add_subcommand("localfactor", "prime-power coefficients a+(p^i), i <= k");
    add_disc(localfactor);
    localfactor->add_option("--prime", o.prime, "prime p")->required();
    localfactor->add_option("--k", o.k, "largest exponent")->capture_default_str();
    localfactor->add_flag("--json", o.json, "JSON output");

    auto residue = app.add_subcommand("residue", "residue and growth diagnostic");
    add_disc(residue);
    add_max(residue);
    residue->add_option("--threads", o.threads, "worker threads for the enumeration");
    residue->add_flag("--json", o.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (o.threads < 1)
            throw usage_error("--threads must be at least 1");
        if (*classgroup)
            return cmd_classgroup(o);
        if (*brute)
            return cmd_brute(o);
        if (*formula)
            return cmd_formula(o);
        if (*verify)
            return cmd_verify(o);
        if (*euler)
            return cmd_euler(o);
        if (*localfactor)
            return cmd_localfactor(o);
        if (*residue)
            return cmd_residue(o);
    } catch (usage_error const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (domain_error const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (overflow_error const & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (internal_consistency_error const & e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
