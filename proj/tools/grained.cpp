// Command line front end: exact counts, analytic estimate intervals, csv
// sweeps over the normalized coordinate, and self checks.

#include "CLI11.hpp"
#include "json.hpp"

#include "grained/closedform.hpp"
#include "grained/exact.hpp"
#include "grained/integral.hpp"
#include "grained/multiplicity.hpp"
#include "grained/primes.hpp"
#include "grained/sturm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace gr = grained;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// --alpha takes the grain ratio ("0.25" gives C = floor(B^1.25)) or the full
// exponent with an exp suffix ("1.25exp" means the same thing).
std::uint64_t resolve_C(std::uint64_t B, std::uint64_t C_flag, const std::string& alpha_str) {
    if (C_flag != 0) return C_flag;
    if (alpha_str.empty()) throw gr::domain_error("give either --C or --alpha");
    std::string s = alpha_str;
    bool as_exponent = false;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "exp") == 0) {
        as_exponent = true;
        s.resize(s.size() - 3);
    }
    double v = 0.0;
    std::size_t pos = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != s.size()) throw gr::domain_error("cannot parse --alpha value '" + alpha_str + "'");
    const double e = as_exponent ? v : 1.0 + v;
    if (!(e > 1.0)) throw gr::domain_error("--alpha must give an exponent above 1");
    const double Cd = std::floor(std::pow(static_cast<double>(B), e));
    if (!(Cd > static_cast<double>(B)) || Cd >= 1.8e19)
        throw gr::domain_error("--alpha gives C outside the uint64 range");
    return static_cast<std::uint64_t>(Cd);
}

gr::ErrorBoundMode mode_from_string(const std::string& s) {
    if (s == "riemann") return gr::ErrorBoundMode::riemann;
    if (s == "dusart") return gr::ErrorBoundMode::dusart;
    throw gr::domain_error("unknown --mode '" + s + "' (riemann or dusart)");
}

bool mode_floor_ok(double B, gr::ErrorBoundMode mode) {
    return mode == gr::ErrorBoundMode::riemann ? B >= gr::riemann_floor : B > gr::dusart_floor;
}

// comma separated list, emitted in the fixed order lambda, nu, eta, kappa
std::vector<gr::Method> parse_methods(const std::string& list) {
    std::vector<gr::Method> seen;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) seen.push_back(gr::method_from_string(tok));
    std::vector<gr::Method> keep;
    for (auto m : {gr::Method::lambda, gr::Method::nu, gr::Method::eta, gr::Method::kappa})
        if (std::find(seen.begin(), seen.end(), m) != seen.end()) keep.push_back(m);
    if (keep.empty()) throw gr::domain_error("--method list is empty");
    return keep;
}

double x_at_xi(const gr::GrainParams& pr, double xi) {
    return std::exp((pr.k + xi * pr.alpha) * std::log(static_cast<double>(pr.B)));
}

int cmd_exact(const gr::GrainParams& pr, double x, bool as_json) {
    const std::uint64_t kap = gr::kappa_exact(pr, x);
    const std::uint64_t pi = gr::pi_exact(pr, x);
    const int j = gr::classify_case(pr, x).j;
    if (as_json) {
        json out{{"B", pr.B},     {"C", pr.C},   {"k", pr.k}, {"alpha", pr.alpha},
                 {"x", x},        {"case", j},   {"kappa", kap}, {"pi", pi}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("B = %" PRIu64 "  C = %" PRIu64 "  k = %d  alpha = %s\n", pr.B, pr.C,
                    pr.k, fmt_g(pr.alpha).c_str());
        std::printf("x = %s  case (%d,%d)\n", fmt_g(x).c_str(), pr.k, j);
        std::printf("kappa = %" PRIu64 "\n", kap);
        std::printf("pi    = %" PRIu64 "\n", pi);
    }
    return 0;
}

int cmd_estimate(const gr::GrainParams& pr, double x, gr::Method method,
                 gr::ErrorBoundMode mode, double rel_tol, bool as_json) {
    gr::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const gr::EstimateInterval ei = gr::estimate(pr, x, method, mode, cfg);
    if (as_json) {
        json out{{"B", pr.B},
                 {"C", pr.C},
                 {"k", pr.k},
                 {"alpha", pr.alpha},
                 {"x", x},
                 {"method", gr::to_string(method)},
                 {"mode", gr::to_string(mode)},
                 {"lower", ei.lower},
                 {"upper", ei.upper}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("B = %" PRIu64 "  C = %" PRIu64 "  k = %d  alpha = %s\n", pr.B, pr.C,
                    pr.k, fmt_g(pr.alpha).c_str());
        std::printf("x = %s  method = %s  mode = %s\n", fmt_g(x).c_str(),
                    gr::to_string(method).c_str(), gr::to_string(mode).c_str());
        std::printf("lower = %s\n", fmt17(ei.lower).c_str());
        std::printf("upper = %s\n", fmt17(ei.upper).c_str());
    }
    return 0;
}

enum class Normalize { absolute, per_x, relative };

Normalize normalize_from_string(const std::string& s) {
    if (s == "absolute") return Normalize::absolute;
    if (s == "per_x") return Normalize::per_x;
    if (s == "relative" || s == "relative_to_kappa_tilde") return Normalize::relative;
    throw gr::domain_error("unknown --normalize '" + s + "'");
}

std::string to_string(Normalize n) {
    switch (n) {
    case Normalize::absolute: return "absolute";
    case Normalize::per_x: return "per_x";
    case Normalize::relative: return "relative_to_kappa_tilde";
    }
    return "?";
}

struct SweepSpec {
    gr::GrainParams pr;
    std::vector<gr::Method> methods;
    Normalize norm = Normalize::absolute;
    gr::ErrorBoundMode mode = gr::ErrorBoundMode::riemann;
    gr::QuadratureConfig cfg;
    std::vector<double> xi;
};

struct SweepRow {
    std::vector<double> vals;
    std::string note;
};

std::vector<std::string> sweep_columns(const SweepSpec& s) {
    std::vector<std::string> cols{"xi", "x"};
    if (s.norm == Normalize::relative) {
        const char* fixed[] = {"lambda_err_rel",          "eta_err_rel",
                               "chat_riemann_rel",        "lambda_hat_riemann_rel",
                               "kappa_hat_riemann_rel",   "chat_dusart_rel",
                               "lambda_hat_dusart_rel",   "kappa_hat_dusart_rel",
                               "nonsquarefree_rel"};
        cols.insert(cols.end(), std::begin(fixed), std::end(fixed));
    } else {
        for (auto m : s.methods) {
            cols.push_back(gr::to_string(m) + "_lower");
            cols.push_back(gr::to_string(m) + "_upper");
        }
    }
    return cols;
}

// One grid row; any failure turns into nan columns plus a note so the rest of
// the sweep still lands.
SweepRow compute_row(const SweepSpec& s, std::size_t want, double xi) {
    SweepRow row;
    const auto& pr = s.pr;
    const double B = static_cast<double>(pr.B);
    const double x = x_at_xi(pr, xi);
    const double bad = std::numeric_limits<double>::quiet_NaN();
    row.vals.push_back(xi);
    row.vals.push_back(x);
    try {
        if (s.norm == Normalize::relative) {
            gr::ShapeParams sp(B, pr.alpha, pr.k);
            const double kt = gr::kappa_tilde(pr, x, s.cfg);
            if (!(kt > 0.0)) {
                row.note = "kappa_tilde vanishes here";
            } else {
                const double ak_x = std::pow(pr.alpha, pr.k) * x;
                row.vals.push_back(std::abs(gr::lambda_tilde_closed(sp, x) - kt) / kt);
                row.vals.push_back(std::abs(gr::eta_tilde_closed(sp, x) - kt) / kt);
                for (auto mode : {gr::ErrorBoundMode::riemann, gr::ErrorBoundMode::dusart}) {
                    if (!mode_floor_ok(B, mode)) {
                        row.vals.insert(row.vals.end(), {bad, bad, bad});
                        continue;
                    }
                    row.vals.push_back(gr::c_hat(pr.k, B, pr.alpha, mode) * ak_x / kt);
                    row.vals.push_back(gr::lambda_hat_norm(sp, pr.k, xi, mode, s.cfg) * ak_x /
                                       kt);
                    row.vals.push_back(gr::kappa_hat(pr, x, mode, s.cfg) / kt);
                }
                const double nonsq = (std::ldexp(gr::detail::fact_d(pr.k), pr.k - 1) -
                                      gr::ordered_bell(pr.k).get_d()) *
                                     x / B;
                row.vals.push_back(nonsq / kt);
            }
        } else {
            for (auto m : s.methods) {
                const auto ei = gr::estimate(pr, x, m, s.mode, s.cfg);
                const double d = s.norm == Normalize::per_x ? x : 1.0;
                row.vals.push_back(ei.lower / d);
                row.vals.push_back(ei.upper / d);
            }
        }
    } catch (const std::exception& e) {
        row.note = e.what();
    }
    for (char& c : row.note)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    while (row.vals.size() < want) row.vals.push_back(bad);
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& s, std::size_t want) {
    std::vector<SweepRow> rows(s.xi.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < s.xi.size();)
            rows[i] = compute_row(s, want, s.xi[i]);
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto nt = static_cast<unsigned>(
        std::min<std::size_t>(hw, std::max<std::size_t>(1, s.xi.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return rows;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& s, const std::vector<std::string>& cols,
                     const std::vector<SweepRow>& rows) {
    os << "# grained sweep\n";
    os << "# B = " << s.pr.B << "  C = " << s.pr.C << "  k = " << s.pr.k
       << "  alpha = " << fmt17(s.pr.alpha) << "\n";
    os << "# mode = " << gr::to_string(s.mode) << "  normalize = " << to_string(s.norm)
       << "  rel_tol = " << fmt17(s.cfg.rel_tol) << "  rows = " << rows.size() << "\n";
    os << "# columns: ";
    for (std::size_t i = 0; i < cols.size(); ++i) os << cols[i] << ", ";
    os << "note\n";
    for (const auto& row : rows) {
        for (double v : row.vals) os << fmt17(v) << ",";
        os << row.note << "\n";
    }
}

json sweep_json(const SweepSpec& s, const std::vector<std::string>& cols,
                const std::vector<SweepRow>& rows) {
    json j;
    j["B"] = s.pr.B;
    j["C"] = s.pr.C;
    j["k"] = s.pr.k;
    j["alpha"] = s.pr.alpha;
    j["mode"] = gr::to_string(s.mode);
    j["normalize"] = to_string(s.norm);
    j["rel_tol"] = s.cfg.rel_tol;
    j["columns"] = cols;
    json rws = json::array();
    json notes = json::object();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rws.push_back(rows[i].vals);
        if (!rows[i].note.empty()) notes[std::to_string(i)] = rows[i].note;
    }
    j["rows"] = std::move(rws);
    j["notes"] = std::move(notes);
    return j;
}

int cmd_sweep(const SweepSpec& s, const std::string& out_path, bool as_json) {
    // fail fast on spec level problems; row level failures only annotate
    if (s.norm == Normalize::relative) {
        if (s.pr.k < 1 || s.pr.k > 4)
            throw gr::domain_error("--normalize relative needs 1 <= k <= 4");
    } else {
        const double B = static_cast<double>(s.pr.B);
        if (!mode_floor_ok(B, s.mode))
            throw gr::domain_error("B is below the " + gr::to_string(s.mode) +
                                   " validity floor");
        for (auto m : s.methods) {
            if ((m == gr::Method::kappa || m == gr::Method::nu) && s.pr.k > 4)
                throw gr::domain_error(gr::to_string(m) + " estimates need k <= 4");
            if (m != gr::Method::kappa && s.pr.k < 1)
                throw gr::domain_error(gr::to_string(m) + " estimates need k >= 1");
        }
    }
    const auto cols = sweep_columns(s);
    const auto rows = run_sweep(s, cols.size());
    if (out_path.empty()) {
        if (as_json)
            std::cout << sweep_json(s, cols, rows).dump(2) << "\n";
        else
            write_sweep_csv(std::cout, s, cols, rows);
        return 0;
    }
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw gr::resource_error("cannot open '" + out_path + "' for writing");
        write_sweep_csv(f, s, cols, rows);
    }
    std::printf("wrote %s (%zu rows)\n", out_path.c_str(), rows.size());
    if (as_json) {
        const std::string jpath = out_path + ".json";
        std::ofstream f(jpath, std::ios::binary);
        if (!f) throw gr::resource_error("cannot open '" + jpath + "' for writing");
        f << sweep_json(s, cols, rows).dump(2) << "\n";
        std::printf("wrote %s\n", jpath.c_str());
    }
    return 0;
}

int cmd_verify_pnt(double max_x, gr::ErrorBoundMode mode) {
    if (!(max_x >= 2.0) || !std::isfinite(max_x))
        throw gr::domain_error("--max must be a finite value >= 2");
    const auto rep = gr::verify_pnt(static_cast<std::uint64_t>(max_x), mode);
    std::printf("# pnt bound check, mode = %s\n", gr::to_string(mode).c_str());
    std::printf("%14s %12s %18s %16s %16s\n", "x", "pi", "li", "bound", "margin");
    for (const auto& ln : rep.lines)
        std::printf("%14.0f %12" PRIu64 " %18.6f %16.6f %16.6f\n", ln.x, ln.pi, ln.li,
                    ln.bound, ln.margin);
    std::printf("checked %" PRIu64 " points, max |pi - li| = %.6f, all within bound: %s\n",
                rep.checked, rep.max_abs_dev, rep.all_pass ? "yes" : "no");
    return rep.all_pass ? 0 : 1;
}

int cmd_verify_sturm(const std::string& k_range) {
    int lo = 0, hi = 0;
    const auto dots = k_range.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(k_range);
        } else {
            lo = std::stoi(k_range.substr(0, dots));
            hi = std::stoi(k_range.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw gr::domain_error("cannot parse --k '" + k_range + "' (use k or lo..hi)");
    }
    if (hi < lo) throw gr::domain_error("--k range is empty");
    std::printf("%4s %8s %8s %10s\n", "k", "min_s", "deg", "seconds");
    for (int k = lo; k <= hi; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const int s = gr::min_s(k);
        const int deg = gr::build_g(k, s).degree();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::printf("%4d %8d %8d %10.2f\n", k, s, deg, dt.count());
    }
    return 0;
}

int cmd_verify_sandwich(const gr::GrainParams& pr, gr::ErrorBoundMode mode, int points,
                        double rel_tol) {
    if (points < 1) throw gr::domain_error("--points must be >= 1");
    gr::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    const double B = static_cast<double>(pr.B);
    const double C = static_cast<double>(pr.C);
    const double lo = 0.5 * std::pow(B, pr.k);
    const double hi = 1.2 * std::pow(C, pr.k);
    std::printf("# sandwich check: B = %" PRIu64 "  C = %" PRIu64 "  k = %d  mode = %s\n",
                pr.B, pr.C, pr.k, gr::to_string(mode).c_str());
    std::printf("%22s %5s %16s %20s %18s %10s\n", "x", "case", "kappa", "tilde", "hat",
                "ratio");
    bool all = true;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.5 : static_cast<double>(i) / (points - 1);
        const double x = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
        const std::uint64_t kap = gr::kappa_exact(pr, x);
        const double kt = gr::kappa_tilde(pr, x, cfg);
        const double kh = gr::kappa_hat(pr, x, mode, cfg);
        const double dev = std::abs(static_cast<double>(kap) - kt);
        // tiny slack absorbs quadrature noise; the theorem margin dwarfs it
        const bool ok = dev <= kh * (1.0 + 1e-9) + 1e-9 * std::max(1.0, kt);
        const double ratio = kh > 0.0 ? dev / kh : (dev > 0.0 ? HUGE_VAL : 0.0);
        if (std::isfinite(ratio)) worst = std::max(worst, ratio);
        all = all && ok;
        std::printf("%22.6e %5d %16" PRIu64 " %20.6f %18.6f %10.6f%s\n", x,
                    gr::classify_case(pr, x).j, kap, kt, kh, ratio, ok ? "" : "  *");
    }
    std::printf("sandwich %s: worst |kappa - tilde| / hat = %.6f over %d points\n",
                all ? "PASS" : "FAIL", worst, points);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse grained prime counting toolkit"};
    app.require_subcommand(1);

    std::uint64_t B = 0, C = 0;
    std::string alpha_str;
    int k = 0;
    double x = 0.0, xi = 0.0;
    std::string method_str = "kappa";
    std::string mode_str = "riemann";
    std::string normalize_str = "absolute";
    std::string methods_str = "lambda";
    double rel_tol = 1e-8;
    bool as_json = false;
    std::string out_path;
    double xi_start = 0.0, xi_stop = 0.0, xi_step = 0.0;
    int points = 25;
    double pnt_max = 1e7;
    std::string k_range = "3..7";

    const auto add_grain = [&](CLI::App* cmd) {
        cmd->add_option("--B", B, "lower grain bound (exclusive)")->required();
        auto* oC = cmd->add_option("--C", C, "upper grain bound (inclusive)");
        auto* oA = cmd->add_option(
            "--alpha", alpha_str,
            "grain ratio; 0.25 means C = floor(B^1.25), 1.25exp is the same");
        oC->excludes(oA);
        cmd->add_option("--k", k, "number of prime factors")->required();
    };

    auto* cmd_ex = app.add_subcommand("exact", "exact kappa and pi counts at x");
    add_grain(cmd_ex);
    cmd_ex->add_option("--x", x, "evaluation point")->required();
    cmd_ex->add_flag("--json", as_json, "emit json instead of text");

    auto* cmd_est = app.add_subcommand("estimate", "analytic estimate interval at x");
    add_grain(cmd_est);
    auto* est_x = cmd_est->add_option("--x", x, "evaluation point");
    auto* est_xi = cmd_est->add_option("--xi", xi, "normalized coordinate in place of --x");
    est_x->excludes(est_xi);
    cmd_est->add_option("--method", method_str, "lambda, nu, eta or kappa")
        ->capture_default_str();
    cmd_est->add_option("--mode", mode_str, "riemann or dusart")->capture_default_str();
    cmd_est->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    cmd_est->add_flag("--json", as_json, "emit json instead of text");

    auto* cmd_sw = app.add_subcommand("sweep", "csv table over a xi grid");
    add_grain(cmd_sw);
    cmd_sw->add_option("--xi-start", xi_start, "first grid point")->required();
    cmd_sw->add_option("--xi-stop", xi_stop, "last grid point (inclusive)")->required();
    cmd_sw->add_option("--xi-step", xi_step, "grid spacing")->required();
    cmd_sw->add_option("--method", methods_str, "comma separated subset of lambda,nu,eta,kappa")
        ->capture_default_str();
    cmd_sw->add_option("--normalize", normalize_str,
                       "absolute, per_x or relative_to_kappa_tilde")
        ->capture_default_str();
    cmd_sw->add_option("--mode", mode_str, "riemann or dusart")->capture_default_str();
    cmd_sw->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    cmd_sw->add_option("--out", out_path, "write csv here instead of stdout");
    cmd_sw->add_flag("--json", as_json, "json output (with --out: a .json file next to the csv)");

    auto* cmd_v = app.add_subcommand("verify", "self checks");
    cmd_v->require_subcommand(1);
    auto* v_pnt = cmd_v->add_subcommand("pnt", "prime counting error bound sweep");
    v_pnt->add_option("--max", pnt_max, "sweep upper end")->capture_default_str();
    v_pnt->add_option("--mode", mode_str, "riemann or dusart")->capture_default_str();
    auto* v_sturm = cmd_v->add_subcommand("sturm", "positivity certificate table");
    v_sturm->add_option("--k", k_range, "k or lo..hi")->capture_default_str();
    auto* v_sand = cmd_v->add_subcommand("sandwich", "exact count inside tilde +- hat");
    add_grain(v_sand);
    v_sand->add_option("--mode", mode_str, "riemann or dusart")->capture_default_str();
    v_sand->add_option("--points", points, "geometric x grid size")->capture_default_str();
    v_sand->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_ex)) {
            const gr::GrainParams pr(B, resolve_C(B, C, alpha_str), k);
            return cmd_exact(pr, x, as_json);
        }
        if (app.got_subcommand(cmd_est)) {
            const gr::GrainParams pr(B, resolve_C(B, C, alpha_str), k);
            if ((est_x->count() > 0) == (est_xi->count() > 0))
                throw gr::domain_error("give exactly one of --x or --xi");
            const double xe = est_x->count() > 0 ? x : x_at_xi(pr, xi);
            return cmd_estimate(pr, xe, gr::method_from_string(method_str),
                                mode_from_string(mode_str), rel_tol, as_json);
        }
        if (app.got_subcommand(cmd_sw)) {
            SweepSpec s{gr::GrainParams(B, resolve_C(B, C, alpha_str), k),
                        parse_methods(methods_str),
                        normalize_from_string(normalize_str),
                        mode_from_string(mode_str),
                        gr::QuadratureConfig{},
                        {}};
            s.cfg.rel_tol = rel_tol;
            if (!(xi_step > 0.0)) throw gr::domain_error("--xi-step must be positive");
            if (!(xi_stop >= xi_start))
                throw gr::domain_error("--xi-stop must be >= --xi-start");
            const double span = (xi_stop - xi_start) / xi_step;
            if (span > 2e6) throw gr::resource_error("sweep grid too large");
            const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
            for (std::size_t i = 0; i < n; ++i) s.xi.push_back(xi_start + i * xi_step);
            return cmd_sweep(s, out_path, as_json);
        }
        if (cmd_v->got_subcommand(v_pnt)) return cmd_verify_pnt(pnt_max, mode_from_string(mode_str));
        if (cmd_v->got_subcommand(v_sturm)) return cmd_verify_sturm(k_range);
        if (cmd_v->got_subcommand(v_sand)) {
            const gr::GrainParams pr(B, resolve_C(B, C, alpha_str), k);
            return cmd_verify_sandwich(pr, mode_from_string(mode_str), points, rel_tol);
        }
        return 2;
    } catch (const gr::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const gr::accuracy_error& e) {
        std::fprintf(stderr, "accuracy: %s (best %.17g, achieved %.3e)\n", e.what(),
                     e.best_estimate, e.achieved_error);
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
