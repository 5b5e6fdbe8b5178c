#pragma once
//
// Word evaluation and the verification suites behind the command line tool.
//

#include <chrono>
#include <ctime>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/version.hpp>
#include <json.hpp>

#include "awf/aufparam.hpp"
#include "awf/check.hpp"
#include "awf/freeprod.hpp"
#include "awf/gmodel.hpp"
#include "awf/matmodel.hpp"
#include "awf/parse.hpp"
#include "awf/qalg.hpp"
#include "awf/states.hpp"

namespace awf {

inline constexpr int report_schema_version = 1;

/// State name does not fit the algebra of the word.
class state_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalResult {
    std::string word;        ///< canonical form
    std::string state;
    Complex value;
    std::optional<std::string> exact;
    std::string normal_form;
    std::string path;        ///< how the value was obtained
    std::optional<Complex> cross_check;
    std::optional<double> tail_bound;
    std::optional<std::size_t> cutoff;
};

inline std::string default_state(AlgebraTag t)
{
    switch (t) {
    case AlgebraTag::suq2: return "psi";
    case AlgebraTag::shift: return "tau";
    case AlgebraTag::matrix_units: return "omega";
    case AlgebraTag::tensor: return "omega-tau";
    }
    return "psi";
}

namespace detail {

inline std::vector<HGen> hgens(const Word& w)
{
    std::vector<HGen> h;
    for (SUq2Gen g : w.suq2_generators())
        h.push_back(to_hgen(g));
    return h;
}

template <CoefficientField F>
std::shared_ptr<const FactorModel<typename F::value_type>> make_factor(const F& field, AlgebraTag t)
{
    switch (t) {
    case AlgebraTag::suq2: return std::make_shared<HaarFactor<F>>(field);
    case AlgebraTag::matrix_units: return std::make_shared<MatrixUnitFactor<F>>(field);
    case AlgebraTag::tensor: return std::make_shared<TensorFactor<F>>(field);
    case AlgebraTag::shift: break;
    }
    return std::make_shared<ShiftFactor<F>>(field);
}

template <CoefficientField F>
FactorElement<typename F::value_type> factor_element(const F& field, const Word& w, AlgebraTag t)
{
    using Scalar = typename F::value_type;
    switch (t) {
    case AlgebraTag::suq2: {
        const auto h = hgens(w);
        return HaarFactor<F>(field).element(std::span<const HGen>(h));
    }
    case AlgebraTag::matrix_units: {
        FactorElement<Scalar> e;
        for (const auto& [m, c] : reduce_matrix_units<Scalar>(w))
            e.add_term(MatrixUnitFactor<F>::encode(m), c);
        return e;
    }
    case AlgebraTag::tensor: return TensorFactor<F>(field).element(reduce_tensor<Scalar>(w));
    case AlgebraTag::shift: break;
    }
    return ShiftFactor<F>(field).element(w.empty() ? 0 : reduce_shift(w));
}

template <CoefficientField F>
EvalResult eval_plain(const F& field, const Word& w, const std::string& state, const SummationPolicy& policy)
{
    using Scalar = typename F::value_type;
    EvalResult r;
    const AlgebraTag tag = w.tag().value_or(AlgebraTag::suq2);
    const auto require = [&](AlgebraTag need) {
        if (w.tag() && *w.tag() != need)
            throw state_mismatch("state '" + state + "' does not apply to " + to_string(*w.tag()) + " words");
    };
    Scalar v{};
    if (state == "psi") {
        require(AlgebraTag::suq2);
        const auto gens = w.suq2_generators();
        const auto nf = reduce_suq2(field, std::span<const SUq2Gen>(gens));
        v = psi_closed_form(field, nf);
        r.normal_form = format_poly(nf);
        r.path = "closed-form psi on the normal form; cross-check by (omega(x)tau)(Phi(w)) series";
        try {
            const auto s = embed_h_state(field.q(), w, policy);
            r.cross_check = s.value;
            r.tail_bound = s.tail_bound;
            r.cutoff = s.cutoff;
        } catch (const precision_error& e) {
            r.path += " (series skipped: " + std::string(e.what()) + ")";
        }
    } else if (state == "tau") {
        require(AlgebraTag::shift);
        const long n = w.empty() ? 0 : reduce_shift(w);
        v = tau(field, n);
        r.normal_form = "S^" + std::to_string(n);
        r.path = "tau(S^n) = [n == 0]";
    } else if (state == "omega") {
        require(AlgebraTag::matrix_units);
        const auto nf = w.empty() ? NCPoly<MatrixMono, Scalar>::monomial(MatrixMono::unit(), field.constant(1))
                                  : reduce_matrix_units<Scalar>(w);
        v = omega(field, nf);
        r.normal_form = format_poly(nf);
        r.path = "omega(e(i,j)) = [i == j](1 - q^2)q^{2i}";
    } else if (state == "omega-tau") {
        require(AlgebraTag::tensor);
        const auto nf = w.empty() ? NCPoly<TensorMono, Scalar>::monomial(TensorMono::unit(), field.constant(1))
                                  : reduce_tensor<Scalar>(w);
        v = omega_tensor_tau(field, nf);
        r.normal_form = format_poly(nf);
        r.path = "(omega(x)tau) on the tensor normal form";
    } else if (state == "phi") {
        throw state_mismatch("state 'phi' needs a free word with F<k>: prefixes");
    } else {
        throw state_mismatch("unknown state '" + state + "' (psi, tau, omega, omega-tau, phi)");
    }
    (void)tag;
    r.value = numeric(v, field.q());
    r.exact = exact_string(v);
    return r;
}

template <CoefficientField F>
EvalResult eval_free(const F& field, const ParsedWord& p, const std::string& state)
{
    using Scalar = typename F::value_type;
    if (state != "phi")
        throw state_mismatch("free words are evaluated with state 'phi', not '" + state + "'");
    std::size_t nf = 0;
    for (const auto& l : p.letters)
        nf = std::max(nf, l.factor);
    std::vector<std::shared_ptr<const FactorModel<Scalar>>> factors;
    std::vector<AlgebraTag> tags;
    for (std::size_t k = 1; k <= nf; ++k) {
        const auto it = p.factor_algebras.find(k);
        tags.push_back(it == p.factor_algebras.end() ? AlgebraTag::shift : it->second);
        factors.push_back(make_factor(field, tags.back()));
    }
    FreeProduct<Scalar> fp(factors, field.q());
    FreeLetterWord<Scalar> w;
    for (const auto& l : p.letters)
        w.letters.push_back(fp.letter(l.factor - 1, factor_element(field, l.word, tags[l.factor - 1])));
    const Scalar v = fp.moment(w);
    EvalResult r;
    const auto [c, nw] = fp.normalize(w);
    r.normal_form = "(" + to_string(c) + ") " + fp.format(nw);
    r.path = "free-product moment by the centering recursion over factor states";
    r.value = numeric(v, field.q());
    r.exact = exact_string(v);
    return r;
}

}  // namespace detail

/// Evaluates a word under a state; an empty state picks the natural one.
inline EvalResult eval_command(const std::string& text, std::string state, double q, bool exact,
                               const SummationPolicy& policy = {})
{
    const ParsedWord p = parse_word(text);
    if (state.empty())
        state = p.free ? "phi" : default_state(p.plain.tag().value_or(AlgebraTag::suq2));
    EvalResult r = exact ? (p.free ? detail::eval_free(ExactField(q), p, state)
                                   : detail::eval_plain(ExactField(q), p.plain, state, policy))
                         : (p.free ? detail::eval_free(FloatField(q), p, state)
                                   : detail::eval_plain(FloatField(q), p.plain, state, policy));
    r.word = canonical(p);
    r.state = state;
    return r;
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

struct SuiteSpec {
    std::string suite;
    double q = 0.5;
    std::optional<std::size_t> max_degree;  ///< per-suite default when unset
    std::optional<std::size_t> max_len;
    std::size_t trunc_n = 64;
    std::size_t trunc_k = 32;
    std::optional<double> tol;
    std::uint64_t seed = 42;
    bool exact = false;
};

struct SuiteInfo {
    std::string name;
    std::string description;
};

inline const std::vector<SuiteInfo>& suite_list()
{
    static const std::vector<SuiteInfo> s = {
        {"relations", "defining relations: exact reduction to 0 and truncated-representation interior residuals"},
        {"lemma16", "psi(w) = (omega(x)tau)(Phi(w)) on 200 seeded random words"},
        {"haar-u", "u = S(1(x)S) is unitary with phi(u^n) = 0 for 1 <= |n| <= 8 (exact)"},
        {"freeness", "alternating centered moments of powers of u and M2 monomials vanish"},
        {"lemma23", "f(i,j) matrix-unit relations and the f-identification state identity (exact)"},
        {"polar", "polar decompositions of b and (1(x)S*)b*, and |Sb| = |b| (exact)"},
        {"theorem", "direct moments of G-words equal the factorized M1/M2 moments"},
        {"corner", "phi(e(0,0)(x)1) = 1 - q^2 and the corner state is normalized (exact)"},
        {"truncation", "psi closed form against the truncated series at N = 16, 32, trunc-n"},
    };
    return s;
}

struct VerificationReport {
    CheckReport checks;
    nlohmann::json parameters;
    double wall_time = 0.0;
    std::string timestamp;

    bool pass() const { return checks.pass(); }
};

namespace detail {

using BigReal = boost::multiprecision::cpp_bin_float_100;

inline CheckReport relations_suite(const SuiteSpec& s, double tol)
{
    CheckReport rep{"relations", {}, std::nullopt};
    const ExactField f(s.q);
    using P = SUq2Poly<QFunction>;
    const auto red = [&](std::vector<SUq2Gen> w) { return reduce_suq2(f, std::span<const SUq2Gen>(w)); };
    constexpr SUq2Gen A = SUq2Gen::a, As = SUq2Gen::a_star, B = SUq2Gen::b, Bs = SUq2Gen::b_star;
    const P one = red({});
    const std::vector<std::pair<std::string, P>> rels = {
        {"a*a + b*b - 1", red({As, A}) + red({Bs, B}) - one},
        {"aa* + q^2 bb* - 1", red({A, As}) + f.q_pow(2) * red({B, Bs}) - one},
        {"ab - q ba", red({A, B}) - f.q_pow(1) * red({B, A})},
        {"a*b - q^-1 ba*", red({As, B}) - f.q_pow(-1) * red({B, As})},
        {"bb* - b*b", red({B, Bs}) - red({Bs, B})},
    };
    for (const auto& [name, p] : rels) {
        CheckRecord r = bound("exact reduction of " + name, static_cast<double>(p.size()), 0.0);
        r.exact_lhs = format_poly(p);
        r.exact_rhs = "0";
        r.inputs["mode"] = "exact";
        rep.records.push_back(std::move(r));
    }
    rep.append(check_relations_numeric(TruncationConfig<double>{s.trunc_n, s.trunc_k, s.q}, tol));
    return rep;
}

inline CheckReport lemma16_suite(const SuiteSpec& s, double tol)
{
    CheckReport rep{"lemma16", {}, s.seed};
    const std::size_t deg = s.max_degree.value_or(6);
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<int> gen(0, 3);
    SummationPolicy policy;
    policy.tolerance = tol / 10.0;
    const FloatField ff(s.q);
    const ExactField ef(s.q);
    for (std::size_t t = 0; t < 200; ++t) {
        std::vector<SUq2Gen> g(1 + t % deg);
        for (auto& x : g)
            x = static_cast<SUq2Gen>(gen(rng));
        const Word w(std::vector<Symbol>(g.begin(), g.end()));
        const nlohmann::json in = {{"word", canonical(w)}, {"q", s.q}};
        try {
            const auto series = embed_h_state(s.q, w, policy);
            if (s.exact) {
                const QFunction closed = psi_closed_form(ef, reduce_suq2(ef, std::span<const SUq2Gen>(g)));
                CheckRecord r = compare("psi(w) = (omega(x)tau)(Phi(w))", closed.eval(s.q), series.value, tol, s.q, in);
                r.exact_lhs = closed.str();
                rep.records.push_back(std::move(r));
            } else {
                const Complex closed = psi_closed_form(ff, reduce_suq2(ff, std::span<const SUq2Gen>(g)));
                rep.records.push_back(compare("psi(w) = (omega(x)tau)(Phi(w))", closed, series.value, tol, s.q, in));
            }
            rep.records.back().inputs["cutoff"] = series.cutoff;
        } catch (const precision_error& e) {
            rep.records.push_back(precision_failure("psi(w) = (omega(x)tau)(Phi(w))", e.what(), tol, in));
        }
    }
    return rep;
}

inline CheckReport haar_u_suite(const SuiteSpec& s, double tol)
{
    GGeneratorSystem<ExactField> g{ExactField(s.q)};
    auto rep = check_haar_unitary(g.space(), g.u(), 8, tol);
    rep.name = "haar-u";
    return rep;
}

inline CheckReport freeness_suite(const SuiteSpec& s, double tol)
{
    FreenessOptions opt;
    opt.max_len = s.max_len.value_or(6);
    opt.seed = s.seed;
    opt.tolerance = tol;
    return check_m1_m2_freeness(s.q, opt);
}

inline CheckReport polar_suite(const SuiteSpec& s, double tol)
{
    auto rep = check_b_polar_identities(TruncationConfig<double>{s.trunc_n, s.trunc_k, s.q}, tol);
    rep.records.push_back(check_sb_modulus(ExactField(s.q)));
    return rep;
}

inline CheckReport theorem_suite(const SuiteSpec& s, double tol)
{
    TheoremOptions opt;
    opt.max_len = s.max_len.value_or(5);
    opt.seed = s.seed;
    opt.tolerance = tol;
    return check_theorem(s.q, opt);
}

inline CheckReport truncation_suite(const SuiteSpec& s)
{
    const BigReal q(s.q);
    std::vector<std::size_t> cutoffs = {16, 32};
    if (s.trunc_n > 32)
        cutoffs.push_back(s.trunc_n);
    auto rep = check_truncation(q, cutoffs);
    rep.append(check_psi_series(TruncationConfig<BigReal>{s.trunc_n, 2, q}, s.max_degree.value_or(8)));
    return rep;
}

/// Acceptance tolerance of each suite when --tol is not given.
inline double default_tolerance_for(const std::string& suite)
{
    if (suite == "relations")
        return 1e-12;
    if (suite == "theorem")
        return 1e-9;
    return default_tolerance;
}

inline std::string utc_timestamp()
{
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace detail

inline VerificationReport run_suite(const SuiteSpec& spec)
{
    DeformationParameter{spec.q};
    const double tol = spec.tol.value_or(detail::default_tolerance_for(spec.suite));
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport out;
    out.timestamp = detail::utc_timestamp();
    const std::string& n = spec.suite;
    if (n == "relations")
        out.checks = detail::relations_suite(spec, tol);
    else if (n == "lemma16")
        out.checks = detail::lemma16_suite(spec, tol);
    else if (n == "haar-u")
        out.checks = detail::haar_u_suite(spec, tol);
    else if (n == "freeness")
        out.checks = detail::freeness_suite(spec, tol);
    else if (n == "lemma23")
        out.checks = check_lemma23(ExactField(spec.q));
    else if (n == "polar")
        out.checks = detail::polar_suite(spec, tol);
    else if (n == "theorem")
        out.checks = detail::theorem_suite(spec, tol);
    else if (n == "corner")
        out.checks = check_corner(ExactField(spec.q));
    else if (n == "truncation")
        out.checks = detail::truncation_suite(spec);
    else
        throw std::invalid_argument("unknown suite '" + n + "'");
    out.checks.name = n;
    out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.parameters = {{"q", spec.q},           {"trunc_n", spec.trunc_n}, {"trunc_k", spec.trunc_k},
                      {"tolerance", tol},      {"seed", spec.seed},       {"exact", spec.exact}};
    if (spec.max_degree)
        out.parameters["max_degree"] = *spec.max_degree;
    if (spec.max_len)
        out.parameters["max_len"] = *spec.max_len;
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json complex_json(const Complex& c)
{
    return {{"re", c.real()}, {"im", c.imag()}};
}

inline nlohmann::json to_json(const CheckRecord& r)
{
    nlohmann::json j = {{"name", r.name},         {"inputs", r.inputs},       {"lhs", complex_json(r.lhs)},
                        {"rhs", complex_json(r.rhs)}, {"residual", r.residual}, {"tolerance", r.tolerance},
                        {"pass", r.pass},         {"outcome", r.outcome}};
    if (r.exact_lhs)
        j["exact_lhs"] = *r.exact_lhs;
    if (r.exact_rhs)
        j["exact_rhs"] = *r.exact_rhs;
    return j;
}

inline nlohmann::json environment_json()
{
    return {{"compiler", __VERSION__},
            {"cplusplus", static_cast<long>(__cplusplus)},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", BOOST_LIB_VERSION},
#if defined(__linux__)
            {"platform", "linux"}
#elif defined(__APPLE__)
            {"platform", "darwin"}
#else
            {"platform", "other"}
#endif
    };
}

inline nlohmann::json to_json(const VerificationReport& r)
{
    nlohmann::json records = nlohmann::json::array();
    for (const auto& c : r.checks.records)
        records.push_back(to_json(c));
    nlohmann::json j = {{"schema_version", report_schema_version},
                        {"suite", r.checks.name},
                        {"pass", r.pass()},
                        {"summary", {{"checks", r.checks.records.size()}, {"failures", r.checks.failures()}}},
                        {"parameters", r.parameters},
                        {"environment", environment_json()},
                        {"records", records},
                        {"timestamp", r.timestamp},
                        {"wall_time_seconds", r.wall_time}};
    j["seed"] = r.checks.seed ? nlohmann::json(*r.checks.seed) : nlohmann::json(r.parameters.at("seed"));
    return j;
}

inline nlohmann::json to_json(const ClassificationResult& c)
{
    nlohmann::json j = {{"lambda1", c.lambda1}, {"lambda2", c.lambda2}, {"rho", c.rho},
                        {"q", c.q},             {"boundary", c.boundary}, {"rotation_speed", c.rotation_speed}};
    if (c.warning)
        j["warning"] = *c.warning;
    return j;
}

}  // namespace awf
