// awf: evaluate words and run the verification suites.
//
// exit status: 0 all checks pass, 1 a check failed, 2 usage or parse error

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "awf/suites.hpp"

namespace {

struct Options {
    double q = 0.5;
    std::size_t max_degree = 0;
    std::size_t max_len = 0;
    std::size_t trunc_n = 64;
    std::size_t trunc_k = 32;
    double tol = 0.0;
    std::uint64_t seed = 42;
    bool exact = false;
    std::string out;
};

void add_common(CLI::App& app, Options& o)
{
    app.add_option("--q", o.q, "deformation parameter, 0 < q < 1")->envname("AWF_Q")->capture_default_str();
    app.add_option("--max-degree", o.max_degree, "word degree bound (suite default when unset)")
        ->envname("AWF_MAX_DEGREE");
    app.add_option("--max-len", o.max_len, "alternating word length bound (suite default when unset)")
        ->envname("AWF_MAX_LEN");
    app.add_option("--trunc-n", o.trunc_n, "truncation of the l2(N) leg")->envname("AWF_TRUNC_N")->capture_default_str();
    app.add_option("--trunc-k", o.trunc_k, "window [-K, K] of the l2(Z) leg")
        ->envname("AWF_TRUNC_K")
        ->capture_default_str();
    app.add_option("--tol", o.tol, "tolerance (suite acceptance tolerance when unset, 1e-10 for most)")
        ->envname("AWF_TOL");
    app.add_option("--seed", o.seed, "random seed")->envname("AWF_SEED")->capture_default_str();
    app.add_flag("--exact", o.exact, "exact rational-function arithmetic in q")->envname("AWF_EXACT");
    app.add_option("--out", o.out, "write the JSON report here")->envname("AWF_OUT");
}

void write_json(const nlohmann::json& j, const std::string& path)
{
    if (path.empty())
        return;
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << '\n';
}

std::string fmt(const awf::Complex& c)
{
    std::ostringstream s;
    s.precision(16);
    s << c.real();
    if (c.imag() != 0.0)
        s << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
    return s.str();
}

awf::FMatrix parse_f(const std::string& text)
{
    std::vector<double> v;
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.is_object() && j.contains("F"))
            for (const auto& row : j.at("F"))
                for (const auto& z : row) {
                    v.push_back(z.at(0).get<double>());
                    v.push_back(z.at(1).get<double>());
                }
        else
            for (const auto& x : j)
                v.push_back(x.get<double>());
    } catch (const nlohmann::json::exception&) {
        std::string s = text;
        for (char& c : s)
            if (c == ',' || c == ';')
                c = ' ';
        std::istringstream in(s);
        double x;
        while (in >> x)
            v.push_back(x);
        if (!in.eof())
            throw CLI::ValidationError("--F", "expected 8 numbers (re im pairs, row-major)");
    }
    if (v.size() != 8)
        throw CLI::ValidationError("--F", "expected 8 numbers (re im pairs, row-major), got " + std::to_string(v.size()));
    awf::FMatrix F;
    F << awf::Complex{v[0], v[1]}, awf::Complex{v[2], v[3]}, awf::Complex{v[4], v[5]}, awf::Complex{v[6], v[7]};
    return F;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moment-level checks for the von Neumann algebra of A_u(F), F in GL(2,C)"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate a state on a word");
    std::string word, state;
    eval->add_option("word", word, "word, e.g. \"b b*\" or \"F1:S . F2:b b*\"")->required();
    eval->add_option("--state", state, "psi, tau, omega, omega-tau or phi (inferred when omitted)");
    add_common(*eval, o);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    std::vector<std::string> names;
    for (const auto& s : awf::suite_list())
        names.push_back(s.name);
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(names));
    add_common(*verify, o);

    auto* classify = app.add_subcommand("classify-f", "eigenvalue-ratio parameter of F in GL(2,C)");
    std::string ftext;
    classify->add_option("--F", ftext, "re,im of F11,F12,F21,F22, or JSON {\"F\": [[[re,im],..],..]}")
        ->required()
        ->envname("AWF_F");
    double rot_t = 0.0;
    classify->add_option("--t", rot_t, "sample time for the rotation matrix");
    std::string cout_path;
    classify->add_option("--out", cout_path, "write the JSON result here")->envname("AWF_OUT");

    app.add_subcommand("list-suites", "list suite names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*eval) {
            awf::SummationPolicy policy;
            if (o.tol > 0)
                policy.tolerance = o.tol;
            const auto r = awf::eval_command(word, state, o.q, o.exact, policy);
            std::cout << "word:        " << r.word << "\nstate:       " << r.state << "\nnormal form: " << r.normal_form
                      << "\nvalue:       " << fmt(r.value) << '\n';
            if (r.exact)
                std::cout << "exact:       " << *r.exact << '\n';
            std::cout << "path:        " << r.path << '\n';
            if (r.cross_check)
                std::cout << "series:      " << fmt(*r.cross_check) << " (cutoff " << *r.cutoff << ", tail <= "
                          << *r.tail_bound << ")\n";
            nlohmann::json j = {{"word", r.word}, {"state", r.state}, {"value", awf::complex_json(r.value)},
                                {"normal_form", r.normal_form}, {"path", r.path}, {"q", o.q}};
            if (r.exact)
                j["exact"] = *r.exact;
            if (r.cross_check) {
                j["series"] = {{"value", awf::complex_json(*r.cross_check)}, {"tail_bound", *r.tail_bound},
                               {"cutoff", *r.cutoff}};
            }
            write_json(j, o.out);
            return 0;
        }
        if (*verify) {
            awf::SuiteSpec spec;
            spec.suite = suite;
            spec.q = o.q;
            if (o.max_degree)
                spec.max_degree = o.max_degree;
            if (o.max_len)
                spec.max_len = o.max_len;
            spec.trunc_n = o.trunc_n;
            spec.trunc_k = o.trunc_k;
            if (o.tol > 0)
                spec.tol = o.tol;
            spec.seed = o.seed;
            spec.exact = o.exact;
            const auto rep = awf::run_suite(spec);
            std::cout << suite << ": " << (rep.pass() ? "PASS" : "FAIL") << " (" << rep.checks.records.size()
                      << " checks, " << rep.checks.failures() << " failed, " << rep.wall_time << " s)\n";
            for (const auto& r : rep.checks.records)
                if (!r.pass)
                    std::cout << "  " << r.outcome << ": " << r.name << " " << r.inputs.dump() << " residual "
                              << r.residual << " > " << r.tolerance << '\n';
            write_json(awf::to_json(rep), o.out);
            return rep.pass() ? 0 : 1;
        }
        if (*classify) {
            const auto F = parse_f(ftext);
            const auto c = awf::classify_F(F);
            nlohmann::json j = awf::to_json(c);
            std::cout << "rho = lambda1/lambda2 = " << c.rho << "\ncanonical q = " << c.q << '\n';
            if (c.boundary) {
                std::cout << "boundary case rho = 1 (free group factor)\n";
            } else {
                const auto rot = awf::rotation_report(c.q, rot_t);
                std::cout << rot.describe() << '\n';
                j["rotation"] = {{"t", rot_t},
                                 {"matrix", {{rot.matrix(0, 0), rot.matrix(0, 1)}, {rot.matrix(1, 0), rot.matrix(1, 1)}}}};
            }
            if (c.warning)
                std::cout << "warning: " << *c.warning << '\n';
            write_json(j, cout_path);
            return 0;
        }
        for (const auto& s : awf::suite_list())
            std::cout << s.name << "\t" << s.description << '\n';
        return 0;
    } catch (const awf::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
