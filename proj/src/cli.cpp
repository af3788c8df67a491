#include "dimer/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dimer/asymptotics.hpp"
#include "dimer/format.hpp"
#include "dimer/oracle.hpp"
#include "dimer/validate.hpp"

namespace dimer::cli {

namespace {

using json = nlohmann::ordered_json;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;
    json extra = json::object();  // trailing scalars (csv: '# key=value' lines)
};

std::string cell(const json& v) {
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_string()) {
        std::string t = v.get<std::string>();
        if (t.find_first_of(",\"\n") == std::string::npos) return t;
        std::string q = "\"";
        for (char c : t) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

void emit(const Table& t, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json recs = json::array();
        for (const auto& r : t.rows) {
            json o = json::object();
            for (std::size_t k = 0; k < t.header.size(); ++k) o[t.header[k]] = r[k];
            recs.push_back(o);
        }
        json doc = {{"records", recs}};
        for (auto it = t.extra.begin(); it != t.extra.end(); ++it) doc[it.key()] = it.value();
        os << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? "," : "") << t.header[k];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << cell(r[k]);
        os << '\n';
    }
    for (auto it = t.extra.begin(); it != t.extra.end(); ++it) os << "# " << it.key() << '=' << cell(it.value()) << '\n';
}

const std::map<std::string, Spin> kSpin{{"up", Spin::Up}, {"down", Spin::Down}};

std::vector<long> parse_schedule(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw PreconditionError("bad schedule entry '" + tok + "'");
        }
    }
    if (out.empty()) throw PreconditionError("empty schedule");
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"dimer: inverse Kasteleyn entries for the square lattice with an interface"};
    app.require_subcommand(1);
    app.fallthrough();

    double a = 1.0, b = 4.0, tol = 1e-10;
    std::string out_path, format = "csv";
    app.add_option("--a", a, "weight a (> 0)");
    app.add_option("--b", b, "weight b (> 0)");
    app.add_option("--tol", tol, "absolute quadrature tolerance");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    Spin si = Spin::Up, sj = Spin::Up;
    int n0 = 1, n = 2, m = 0;
    auto spin_opts = [&](CLI::App* sc, bool required) {
        auto* oi = sc->add_option("--i", si, "white sublattice up|down")->transform(CLI::CheckedTransformer(kSpin));
        auto* oj = sc->add_option("--j", sj, "black sublattice up|down")->transform(CLI::CheckedTransformer(kSpin));
        if (required) {
            oi->required();
            oj->required();
        }
    };

    auto* c_crit = app.add_subcommand("criticality", "classify (a, b)");

    int samples = 256;
    auto* c_roots = app.add_subcommand("roots", "root moduli over the unit circle");
    c_roots->add_option("--samples", samples)->check(CLI::PositiveNumber);

    double theta = 1.0;
    auto* c_green = app.add_subcommand("green", "Fourier-space Green's function entry");
    spin_opts(c_green, false);
    c_green->add_option("--n", n);
    c_green->add_option("--n0", n0);
    c_green->add_option("--theta", theta, "omega = exp(i theta)");

    bool sweep = false;
    int n_lo = 0, n_hi = 0, m_lo = 0, m_hi = 0;
    auto* c_invk = app.add_subcommand("invk", "inverse Kasteleyn entry K^-1(w_i(n,m), b_j(n0,0))");
    spin_opts(c_invk, true);
    auto* o_n0 = c_invk->add_option("--n0", n0)->required();
    auto* o_n = c_invk->add_option("--n", n);
    auto* o_m = c_invk->add_option("--m", m);
    c_invk->add_flag("--sweep", sweep, "rectangle of (n, m)");
    c_invk->add_option("--n-lo", n_lo);
    c_invk->add_option("--n-hi", n_hi);
    c_invk->add_option("--m-lo", m_lo);
    c_invk->add_option("--m-hi", m_hi);
    (void)o_n0;

    std::string cas = "cor1", sched;
    double p = 2.0;
    auto* c_asym = app.add_subcommand("asymptote", "ratio probe of a leading-order formula");
    c_asym->add_option("--case", cas)->required();
    spin_opts(c_asym, false);
    c_asym->add_option("--n0", n0);
    c_asym->add_option("--n", n);
    c_asym->add_option("--m", m);
    c_asym->add_option("--p", p);
    c_asym->add_option("--schedule", sched, "comma separated values of the asymptotic variable")->required();

    std::string kind = "count", boundary = "open";
    int N = 60;
    auto* c_orc = app.add_subcommand("oracle", "brute-force checks");
    c_orc->add_option("--kind", kind)->check(CLI::IsMember({"count", "window", "green"}));
    c_orc->add_option("--n-lo", n_lo);
    c_orc->add_option("--n-hi", n_hi);
    c_orc->add_option("--m-lo", m_lo);
    c_orc->add_option("--m-hi", m_hi);
    c_orc->add_option("--boundary", boundary)->check(CLI::IsMember({"open", "cylinder"}));
    spin_opts(c_orc, false);
    c_orc->add_option("--n0", n0);
    c_orc->add_option("--n", n);
    c_orc->add_option("--m", m);
    c_orc->add_option("--theta", theta);
    c_orc->add_option("--N", N);

    std::string level = "fast";
    auto* c_val = app.add_subcommand("validate", "run the invariant suites");
    c_val->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}));

    std::vector<std::string> rev(args_in.rbegin(), args_in.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return Usage;
    }

    std::ofstream file;
    std::ostream* os = &out;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            err << "cannot write " << out_path << '\n';
            return Usage;
        }
        os = &file;
    }

    try {
        WeightParams w(a, b);
        QuadratureSpec q;
        q.abs_tol = tol;
        q.validate();
        Table t;

        if (c_crit->parsed()) {
            auto ts = torus_root_search(w);
            t.header = {"a", "b", "abs_diff", "regime", "torus_root"};
            t.rows.push_back({a, b, std::abs(a - b), is_critical(w) ? "critical" : "non-critical", ts.has_root});
        } else if (c_roots->parsed()) {
            if (samples < 2) throw PreconditionError("--samples must be >= 2");
            if (format == "csv") {
                write_root_profile_csv(*os, root_norm_profile(w, samples));
                return Ok;
            }
            t.header = {"theta", "r1p", "r1m", "r2p", "r2m"};
            for (auto& r : root_norm_profile(w, samples)) t.rows.push_back({r.theta, r.r1p, r.r1m, r.r2p, r.r2m});
        } else if (c_green->parsed()) {
            Phase ph = Phase::from_theta(theta);
            cplx g = green_eval(si, sj, n, n0, ph, w);
            auto A = coefficients(case_for(n0), n0, ph, w);
            auto B = coefficients_by_solve(case_for(n0), n0, ph, w);
            double dev = 0.0;
            for (int k = 0; k < 4; ++k) {
                if (B.c_set[k]) dev = std::max(dev, std::abs(A.c[k] - B.c[k]) / std::max(std::abs(A.c[k]), 1e-300));
                if (B.d_set[k]) dev = std::max(dev, std::abs(A.d[k] - B.d[k]) / std::max(std::abs(A.d[k]), 1e-300));
            }
            t.header = {"i", "j", "n", "n0", "theta", "re", "im", "coeff_solve_relerr"};
            t.rows.push_back({spin_name(si), spin_name(sj), n, n0, theta, g.real(), g.imag(), dev});
        } else if (c_invk->parsed()) {
            std::vector<InvKEntry> rows;
            if (sweep) {
                rows = invk_sweep(si, sj, n0, n_lo, n_hi, m_lo, m_hi, w, q);
            } else {
                if (!o_n->count() || !o_m->count()) throw PreconditionError("--n and --m are required without --sweep");
                rows.push_back(invk_entry(si, sj, n0, n, m, w, q));
            }
            if (format == "csv") {
                write_invk_csv(*os, rows);
                return Ok;
            }
            t.header = {"i", "j", "n0", "n", "m", "value", "imag_residual"};
            for (auto& e : rows)
                t.rows.push_back({spin_name(e.i), spin_name(e.j), e.n0, e.n, e.m, e.value, e.imag_residual});
        } else if (c_asym->parsed()) {
            AsymptoticCase ac;
            ac.id = parse_cor_case(cas);
            ac.i = si;
            ac.j = sj;
            ac.n0 = n0;
            ac.n = n;
            ac.m = m;
            ac.p = p;
            ac.params = w;
            auto pt = ratio_probe(ac, parse_schedule(sched), q);
            t.header = {"var", "asymptotic", "quadrature", "ratio"};
            for (auto& r : pt.rows) t.rows.push_back({r.var, r.asymptotic, r.quadrature, r.ratio});
            t.extra["error_exponent"] = pt.error_exponent;
        } else if (c_orc->parsed()) {
            if (kind == "count") {
                FiniteWindow win(n_lo, n_hi, m_lo, m_hi);
                auto cc = matching_count_check(win, w);
                t.header = {"det_abs", "enum_weighted", "enum_count", "agree"};
                t.rows.push_back({cc.det_abs, cc.enum_weighted, cc.enum_count, cc.agree});
                emit(t, format, *os);
                return cc.agree ? Ok : Validation;
            }
            if (kind == "window") {
                FiniteWindow win(n_lo, n_hi, m_lo, m_hi, boundary == "cylinder" ? Boundary::Cylinder : Boundary::Open);
                VertexId wv{n, m, white(si)}, bv{n0, 0, black(sj)};
                auto W = window_inverse_rows(win, w, {bv});
                double ov = W.at(wv, bv);
                double iv = invk_entry(si, sj, n0, n, m, w, q).value;
                t.header = {"window", "integral", "rel_err"};
                t.rows.push_back({ov, iv, std::abs(ov - iv) / std::max(std::abs(iv), 1e-300)});
            } else {
                Phase ph = Phase::from_theta(theta);
                auto T = truncated_green_solve(n0, ph, N, w);
                double dev = 0.0;
                for (int k = -N + 10; k <= N - 10; ++k)
                    dev = std::max(dev, (T(k) - green_matrix(k, n0, ph, w)).cwiseAbs().maxCoeff());
                t.header = {"n0", "theta", "N", "max_abs_diff"};
                t.rows.push_back({n0, theta, N, dev});
            }
        } else if (c_val->parsed()) {
            auto results = run_suites(level == "full");
            bool ok = true;
            // no timings: output stays byte-identical between runs
            t.header = {"suite", "passed", "detail"};
            for (auto& r : results) {
                ok = ok && r.passed;
                t.rows.push_back({r.name, r.passed, r.detail});
            }
            emit(t, format, *os);
            return ok ? Ok : Validation;
        }
        emit(t, format, *os);
        return Ok;
    } catch (const PreconditionError& e) {
        err << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const GuardError& e) {
        err << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return Numerical;
    }
}

}  // namespace dimer::cli
