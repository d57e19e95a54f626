#ifndef LATZETA_REPORT_HPP
#define LATZETA_REPORT_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qform.hpp"
#include "sublattice.hpp"

namespace latzeta {

struct mismatch {
    std::size_t m = 0;
    std::int64_t formula = 0;
    std::int64_t brute = 0;
    friend bool operator==(mismatch const &, mismatch const &) = default;
};

/// Formula vs oracle comparison for one form and one counting mode.
/// Coefficient lists hold a_1 .. a_N (no leading slot).
struct verification_report {
    std::int64_t disc = 0;
    bqf form;
    count_mode mode = count_mode::sl;
    std::size_t N = 0;
    std::vector<std::int64_t> coeffs_formula;
    std::vector<std::int64_t> coeffs_brute;
    std::vector<mismatch> mismatches;
    double elapsed_ms_formula = 0;
    double elapsed_ms_brute = 0;

    bool ok() const { return mismatches.empty(); }
};

inline char const * to_string(count_mode m)
{
    return m == count_mode::sl ? "sl" : "gl";
}

inline std::optional<count_mode> parse_mode(std::string const & s)
{
    if (s == "sl")
        return count_mode::sl;
    if (s == "gl")
        return count_mode::gl;
    return std::nullopt;
}

/// Builds a report from 1-based coefficient vectors (slot 0 ignored).
inline verification_report make_report(bqf const & f, count_mode mode, std::size_t N,
                                       std::vector<std::int64_t> const & formula,
                                       std::vector<std::int64_t> const & brute)
{
    verification_report r;
    r.disc = to_int64(f.discriminant());
    r.form = f;
    r.mode = mode;
    r.N = N;
    r.coeffs_formula.assign(formula.begin() + 1, formula.begin() + std::ptrdiff_t(N) + 1);
    r.coeffs_brute.assign(brute.begin() + 1, brute.begin() + std::ptrdiff_t(N) + 1);
    for (std::size_t m = 1; m <= N; ++m)
        if (formula[m] != brute[m])
            r.mismatches.push_back({m, formula[m], brute[m]});
    return r;
}

inline nlohmann::json form_to_json(bqf const & f)
{
    return nlohmann::json::array({to_int64(f.a), to_int64(f.b), to_int64(f.c)});
}

inline nlohmann::json to_json(verification_report const & r)
{
    nlohmann::json j;
    j["disc"] = r.disc;
    j["form"] = form_to_json(r.form);
    j["mode"] = to_string(r.mode);
    j["N"] = r.N;
    j["coeffs_formula"] = r.coeffs_formula;
    j["coeffs_brute"] = r.coeffs_brute;
    auto mm = nlohmann::json::array();
    for (auto const & x : r.mismatches)
        mm.push_back({{"m", x.m}, {"formula", x.formula}, {"brute", x.brute}});
    j["mismatches"] = mm;
    j["elapsed_ms"] = {{"formula", r.elapsed_ms_formula}, {"brute", r.elapsed_ms_brute}};
    return j;
}

inline verification_report report_from_json(nlohmann::json const & j)
{
    verification_report r;
    r.disc = j.at("disc").get<std::int64_t>();
    auto f = j.at("form");
    r.form = {f.at(0).get<std::int64_t>(), f.at(1).get<std::int64_t>(), f.at(2).get<std::int64_t>()};
    auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!mode)
        throw domain_error("report: unknown mode " + j.at("mode").dump());
    r.mode = *mode;
    r.N = j.at("N").get<std::size_t>();
    r.coeffs_formula = j.at("coeffs_formula").get<std::vector<std::int64_t>>();
    r.coeffs_brute = j.at("coeffs_brute").get<std::vector<std::int64_t>>();
    for (auto const & x : j.at("mismatches"))
        r.mismatches.push_back({x.at("m").get<std::size_t>(), x.at("formula").get<std::int64_t>(),
                                x.at("brute").get<std::int64_t>()});
    r.elapsed_ms_formula = j.at("elapsed_ms").at("formula").get<double>();
    r.elapsed_ms_brute = j.at("elapsed_ms").at("brute").get<double>();
    return r;
}

/// CSV with the fixed columns m,a_formula,a_brute,match.
inline void write_csv(std::ostream & os, verification_report const & r, bool header = true)
{
    if (header)
        os << "m,a_formula,a_brute,match\n";
    for (std::size_t i = 0; i < r.N; ++i)
        os << i + 1 << ',' << r.coeffs_formula[i] << ',' << r.coeffs_brute[i] << ','
           << (r.coeffs_formula[i] == r.coeffs_brute[i] ? 1 : 0) << '\n';
}

} // namespace latzeta

#endif // LATZETA_REPORT_HPP
