// Command-line front end: evaluate, sweep the error plot, self-test, dump coefficients.
#include <ferrers/legendre.hpp>
#include <ferrers/selftest.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

using namespace ferrers;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, io = 3 };

struct ParamFlags {
    std::string nu, a, mu;
    int terms = max_terms;
    int digits = 40;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--nu", f.nu, "degree nu")->required();
    auto* a = cmd->add_option("--a", f.a, "a in [0,1), mu = sqrt(1-a^2)(nu+1/2)");
    auto* mu = cmd->add_option("--mu", f.mu, "order mu in [0, nu+1/2]");
    a->excludes(mu);
    mu->excludes(a);
    cmd->add_option("--terms", f.terms, "number of terms n")->check(CLI::Range(1, max_terms));
    cmd->add_option("--digits", f.digits, "working precision in decimal digits")->check(CLI::Range(10, 2000));
}

Params params_from(const ParamFlags& f) {
    if (f.a.empty() == f.mu.empty()) throw CLI::ValidationError("exactly one of --a and --mu is required");
    Real nu(f.nu);
    if (!(nu > 0)) throw DomainError("nu must be positive");
    return f.a.empty() ? make_params_mu(nu, Real(f.mu)) : make_params(nu, Real(f.a));
}

int cmd_eval(const ParamFlags& f, const std::string& xs, const std::string& fn, bool check) {
    PrecisionScope ps(f.digits);
    Params p = params_from(f);
    Real x(xs);
    if (!(abs(x) <= 1 - Real(endpoint_guard))) throw DomainError("x must satisfy |x| <= 1 - 1e-3");
    FerrersKind kind = (fn == "P" || fn == "Pprime") ? FerrersKind::P : FerrersKind::Q;
    bool deriv = fn == "Pprime" || fn == "Qprime";
    auto t0 = std::chrono::steady_clock::now();
    FerrersValue v = eval_ferrers(p, x, kind, f.terms);
    auto t1 = std::chrono::steady_clock::now();
    Real val = deriv ? v.deriv : v.value;
    const char* method = v.method == AbMethod::taylor ? "taylor" : v.method == AbMethod::contour ? "contour" : "expansion";
    std::cout << "function: " << fn << "\n"
              << "nu: " << p.nu.str(f.digits) << "\n"
              << "mu: " << p.mu.str(f.digits) << "\n"
              << "a: " << p.a.str(f.digits) << "\n"
              << "x: " << x.str(f.digits) << "\n"
              << "terms: " << f.terms << "\n"
              << "digits: " << f.digits << "\n"
              << "method: " << method << "\n"
              << "asymptotic: " << val.str(f.digits) << "\n"
              << "asymptotic_seconds: " << std::chrono::duration<double>(t1 - t0).count() << "\n";
    if (check) {
        auto t2 = std::chrono::steady_clock::now();
        RefValue r = kind == FerrersKind::P ? ferrers_P_ref(p, x) : ferrers_Q_ref(p, x);
        auto t3 = std::chrono::steady_clock::now();
        Real ref = deriv ? r.deriv : r.value;
        std::cout << "oracle: " << ref.str(f.digits) << "\n"
                  << "relative_error: " << (abs(val - ref) / abs(ref)).str(3) << "\n"
                  << "oracle_seconds: " << std::chrono::duration<double>(t3 - t2).count() << "\n";
    }
    return ok;
}

struct GridFlags {
    std::string start = "0", stop = "0.9", step = "0.02", out = "-";
    int threads = 0;
};

int cmd_error_plot(const ParamFlags& f, const GridFlags& g) {
    PrecisionScope ps(f.digits);
    Params p = params_from(f);
    Real start(g.start), stop(g.stop), step(g.step);
    if (!(step > 0)) throw CLI::ValidationError("--grid-step must be positive");
    if (start < 0 || stop > 1 - Real(endpoint_guard)) throw DomainError("grid must lie in [0, 1 - 1e-3]");
    std::vector<Real> xs;
    // tolerate rounding in (stop - start)/step
    for (long i = 0; start + step * i <= stop + step * Real("1e-9"); ++i) xs.push_back(start + step * i);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (g.out != "-") {
        file.open(g.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << g.out << "\n";
            return io;
        }
        os = &file;
    }
    int threads = g.threads > 0 ? g.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<OmegaRow> rows = error_plot(p, xs, f.terms, threads);
    const int d = f.digits;
    *os << "# meta: nu=" << p.nu.str(d) << " a=" << p.a.str(d) << " mu=" << p.mu.str(d) << " terms=" << f.terms
        << " digits=" << d << "\n";
    *os << "x,omega,asymptotic,reference,envelope\n";
    for (const auto& r : rows)
        *os << r.x.str(d) << ',' << r.omega.str(d) << ',' << r.p_asym.str(d) << ',' << r.p_ref.str(d) << ','
            << r.M.str(d) << '\n';
    os->flush();
    if (!*os) {
        std::cerr << "error: write failed\n";
        return io;
    }
    return ok;
}

int cmd_selftest(const std::string& filter, int digits) {
    if (!filter.empty()) {
        auto mods = self_check_modules();
        if (std::find(mods.begin(), mods.end(), filter) == mods.end())
            throw CLI::ValidationError("unknown module '" + filter + "'");
    }
    PrecisionScope ps(digits);
    auto results = run_self_checks(filter);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << std::left << std::setw(10) << r.module << std::setw(34) << r.name << (r.pass ? "PASS  " : "FAIL  ")
                  << r.detail << "\n";
        failed += !r.pass;
    }
    std::cout << results.size() - failed << "/" << results.size() << " checks passed at " << digits << " digits\n";
    if (failed) {
        std::cout << "failing:";
        for (const auto& r : results)
            if (!r.pass) std::cout << ' ' << r.module << '.' << r.name;
        std::cout << "\n";
        return check_failed;
    }
    return ok;
}

int cmd_coeffs(const std::string& table, int s) {
    const auto& t = coeff_tables();
    const auto& list = table == "E" ? t.E : table == "e" ? t.e : t.et;
    if (s == 0) {
        for (int k = 1; k <= static_cast<int>(list.size()); ++k) list[k - 1].dump(std::cout, k);
    } else {
        list[s - 1].dump(std::cout, s);
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ferrers functions of large degree and order"};
    app.require_subcommand(1);

    ParamFlags ef;
    std::string ex, efn = "P";
    bool echeck = false;
    auto* eval = app.add_subcommand("eval", "evaluate P, Q or a derivative at one point");
    add_param_flags(eval, ef);
    eval->add_option("--x", ex, "argument in (-1, 1)")->required();
    eval->add_option("--function", efn, "P, Q, Pprime or Qprime")
        ->check(CLI::IsMember({"P", "Q", "Pprime", "Qprime"}));
    eval->add_flag("--check", echeck, "compare with the hypergeometric oracle");

    ParamFlags pf;
    GridFlags gf;
    auto* plot = app.add_subcommand("error-plot", "write the error table log10(|P - P_ref|/M) as CSV");
    add_param_flags(plot, pf);
    plot->add_option("--grid-start", gf.start, "first x");
    plot->add_option("--grid-stop", gf.stop, "last x (inclusive)");
    plot->add_option("--grid-step", gf.step, "x spacing");
    plot->add_option("--out", gf.out, "output path, - for stdout");
    plot->add_option("--threads", gf.threads, "worker threads, 0 for all cores");

    std::string filter;
    int st_digits = 40;
    auto* self = app.add_subcommand("selftest", "run the invariant suite");
    self->add_option("--filter", filter, "only checks of this module");
    self->add_option("--digits", st_digits, "working precision")->check(CLI::Range(5, 2000));

    std::string table = "E";
    int cs = 0;
    auto* coeffs = app.add_subcommand("coeffs", "dump a coefficient table as exact rationals (s k j num/den)");
    coeffs->add_option("--table", table, "E (Legendre), e or et (parabolic cylinder)")
        ->check(CLI::IsMember({"E", "e", "et"}));
    coeffs->add_option("--s", cs, "index s, 0 for all")->check(CLI::Range(0, default_max_s));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }
    try {
        if (*eval) return cmd_eval(ef, ex, efn, echeck);
        if (*plot) return cmd_error_plot(pf, gf);
        if (*self) return cmd_selftest(filter, st_digits);
        if (*coeffs) return cmd_coeffs(table, cs);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return check_failed;
    }
    return usage;
}
