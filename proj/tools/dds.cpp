// dds: a computational laboratory for Diophantine Dirichlet series of the
// form sum f(phi n)^v w(n) / n^s (Flint-Hills, Cookson-Hills and friends):
// partial sums and spike diagnostics, the Bessel-ratio constant Lambda, the
// polygamma reconstruction and its double-sided bounds, Hoelder and
// Fermi-Dirac inequality chains, continued-fraction analysis, and the
// Weierstrass-pair expansion.

#include <CLI11.hpp>

#include "dds/bounds.hpp"
#include "dds/diophantine.hpp"
#include "dds/elliptic.hpp"
#include "dds/envelope.hpp"
#include "dds/errors.hpp"
#include "dds/hiprec.hpp"
#include "dds/series.hpp"
#include "dds/special.hpp"
#include "dds/verify.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using dds::io::Format;
using dds::io::ResultEnvelope;
using dds::io::RunConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitDomain = 2;
constexpr int kExitPole = 3;
constexpr int kExitUsage = 64;

struct GlobalOpts {
    std::string format;
    std::string out;
    std::string precision;
    std::string cache_dir;
    std::string pi_digits;
    bool no_cache = false;
};

RunConfig effective_config(const GlobalOpts& g) {
    RunConfig cfg = dds::io::load_config();
    if (!g.format.empty()) {
        if (g.format == "table") cfg.format = Format::table;
        else if (g.format == "json") cfg.format = Format::json;
        else if (g.format == "csv") cfg.format = Format::csv;
        else throw dds::ParseError("unknown format '" + g.format + "'");
    }
    if (!g.precision.empty()) {
        if (g.precision == "fast") cfg.precision = dds::io::Precision::fast;
        else if (g.precision == "extended") cfg.precision = dds::io::Precision::extended;
        else throw dds::ParseError("unknown precision '" + g.precision + "'");
    }
    if (!g.out.empty()) cfg.out_path = g.out;
    if (!g.cache_dir.empty()) cfg.cache_dir = g.cache_dir;
    if (!g.pi_digits.empty()) cfg.pi_digits_path = g.pi_digits;
    if (const char* env = std::getenv("DDS_PI_DIGITS"); env && *env && g.pi_digits.empty())
        cfg.pi_digits_path = env;
    cfg.no_cache = cfg.no_cache || g.no_cache;
    return cfg;
}

std::string pi_digits_for(const RunConfig& cfg) {
    if (cfg.pi_digits_path) return dds::dio::read_digit_file(*cfg.pi_digits_path);
    return dds::dio::builtin_pi_digits();
}

void write_out(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path) {
        std::ofstream f(*cfg.out_path);
        if (!f) throw dds::Error("cannot open output path: " + *cfg.out_path);
        f << text;
    } else {
        std::cout << text;
    }
}

// Runs `fill` to populate results/diagnostics unless an identical invocation
// is already cached; renders and reports the process exit code.
template <typename Fill>
int run_command(const RunConfig& cfg, ResultEnvelope env, Fill fill) {
    dds::series::set_eval_mode(cfg.precision == dds::io::Precision::fast
                                   ? dds::series::EvalMode::fast
                                   : dds::series::EvalMode::extended);
    env.params["precision"] =
        cfg.precision == dds::io::Precision::fast ? "fast" : "extended";
    env.tool_version = DDS_VERSION;
    bool use_cache = cfg.cache_dir && !cfg.no_cache;
    std::string key;
    if (use_cache) {
        key = dds::io::cache_key(env);
        if (auto hit = dds::io::cache_lookup(*cfg.cache_dir, key)) {
            if (hit->command == env.command && hit->params == env.params &&
                hit->tool_version == env.tool_version) {
                hit->diagnostics["cache_hit"] = true;
                write_out(cfg, dds::io::render(*hit, cfg.format));
                return kExitOk;
            }
        }
    }
    fill(env);
    env.diagnostics["cache_hit"] = false;
    if (use_cache) dds::io::cache_store(*cfg.cache_dir, key, env);
    write_out(cfg, dds::io::render(env, cfg.format));
    return kExitOk;
}

json spikes_json(const std::vector<dds::series::SpikeEntry>& spikes) {
    json arr = json::array();
    for (const auto& s : spikes)
        arr.push_back({{"index", s.index}, {"magnitude", s.magnitude}});
    return arr;
}

dds::series::SeriesSpec make_spec(const std::string& kernel, double v, double s,
                                  double phi, const std::vector<double>& chi,
                                  const std::vector<double>& expw) {
    dds::series::SeriesSpec spec;
    if (kernel == "csc") spec.kernel = dds::series::Kernel::csc;
    else if (kernel == "cot") spec.kernel = dds::series::Kernel::cot;
    else if (kernel == "sec") spec.kernel = dds::series::Kernel::sec;
    else if (kernel == "one") spec.kernel = dds::series::Kernel::one;
    else throw dds::ParseError("unknown kernel '" + kernel + "'");
    spec.power = v;
    spec.exponent = s;
    spec.phase = phi;
    if (!chi.empty()) spec.periodic = dds::series::PeriodicWeight{chi};
    if (!expw.empty()) {
        if (expw.size() != 2) throw dds::ParseError("--weight-exp expects x,p");
        spec.exponential = dds::series::ExpWeight{expw[0], expw[1]};
    }
    return spec;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    // the check tolerances are calibrated for the normative mode
    dds::series::set_eval_mode(dds::series::EvalMode::extended);
    std::vector<dds::verify::CheckResult> checks;
    if (suite == "identities") checks = dds::verify::run_identities();
    else if (suite == "golden") checks = dds::verify::run_golden();
    else if (suite == "all") checks = dds::verify::run_all();
    else {
        std::cerr << "usage: verify --suite identities|golden|all\n";
        return kExitUsage;
    }
    int failed = 0;
    std::ostringstream os;
    for (const auto& c : checks) {
        if (!c.pass) ++failed;
        char line[256];
        if (c.tolerance > 0.0)
            std::snprintf(line, sizeof line, "%-4s %-60s measured %.3e tolerated %.1e\n",
                          c.pass ? "ok" : "FAIL", c.name.c_str(), c.measured, c.tolerance);
        else
            std::snprintf(line, sizeof line, "%-4s %-60s\n", c.pass ? "ok" : "FAIL",
                          c.name.c_str());
        os << line;
    }
    os << checks.size() << " checks, " << failed << " failed\n";
    if (cfg.format == Format::json) {
        ResultEnvelope env;
        env.command = "verify";
        env.params = {{"suite", suite}};
        env.tool_version = DDS_VERSION;
        json rows = json::array();
        for (const auto& c : checks)
            rows.push_back({{"name", c.name},
                            {"measured", c.measured},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass}});
        env.results = {{"rows", rows},
                       {"checks", static_cast<long long>(checks.size())},
                       {"failed", failed}};
        write_out(cfg, dds::io::render(env, cfg.format));
    } else {
        write_out(cfg, os.str());
    }
    return failed == 0 ? kExitOk : kExitVerifyFail;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Diophantine Dirichlet series laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", DDS_VERSION);
    GlobalOpts g;
    app.add_option("--format", g.format, "output format: table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--out", g.out, "write output to this path");
    app.add_option("--precision", g.precision, "evaluation mode: fast|extended")
        ->check(CLI::IsMember({"fast", "extended"}));
    app.add_option("--cache-dir", g.cache_dir, "enable result caching in this directory");
    app.add_flag("--no-cache", g.no_cache, "bypass the cache");
    app.add_option("--pi-digits", g.pi_digits, "digit-string file overriding builtin pi");

    // sum
    auto* sum = app.add_subcommand("sum", "partial sum of a series spec");
    std::string kernel = "csc";
    double v = 2.0, s = 3.0, phi = 1.0;
    long long from = 1, to = 1;
    std::vector<double> chi, expw;
    sum->add_option("--kernel", kernel, "csc|cot|sec|one")
        ->check(CLI::IsMember({"csc", "cot", "sec", "one"}));
    sum->add_option("--v", v, "kernel power");
    sum->add_option("--s", s, "denominator exponent");
    sum->add_option("--phi", phi, "argument scale");
    sum->add_option("--from", from, "first index")->required();
    sum->add_option("--to", to, "last index")->required();
    sum->add_option("--weight-period", chi, "periodic weight table (value for n=1 first)")
        ->delimiter(',');
    sum->add_option("--weight-exp", expw, "exponential weight x,p")->delimiter(',');

    // lambda
    auto* lambda = app.add_subcommand("lambda", "Bessel-ratio partial series Lambda(sigma)");
    long long sigma = 10001;
    std::string path = "both";
    lambda->add_option("--sigma", sigma, "upper limit (sum runs to sigma-1)")->required();
    lambda->add_option("--path", path, "bessel|elementary|both")
        ->check(CLI::IsMember({"bessel", "elementary", "both"}));

    // reconstruct
    auto* reconstruct = app.add_subcommand("reconstruct", "polygamma reconstruction Psi(sigma)");
    long long rsigma = 10001;
    reconstruct->add_option("--sigma", rsigma)->required();
    bool rcompare = false;
    reconstruct->add_flag("--compare-direct", rcompare, "also evaluate the direct partial sum");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "double-sided bounds around Psi(sigma)");
    long long bsigma = 10001;
    bnd->add_option("--sigma", bsigma)->required();

    // holder
    auto* holder = app.add_subcommand("holder", "truncated Hoelder inequality report");
    double hp = 2.0, hx = 1.0;
    long long hN = 1000;
    holder->add_option("--p", hp)->required();
    holder->add_option("--N", hN)->required();
    auto* hx_opt = holder->add_option("--x", hx, "Fermi-Dirac weight argument (enables weighted variant)");

    // fermi
    auto* fermi = app.add_subcommand("fermi", "Fermi-Dirac series F_p(x)");
    double fp = 2.0, fx = 0.0;
    fermi->add_option("--p", fp)->required();
    fermi->add_option("--x", fx)->required();

    // spikes
    auto* spikes = app.add_subcommand("spikes", "running |csc| records and convergent correlation");
    long long n_max = 400;
    spikes->add_option("--n-max", n_max)->required();

    // convergents
    auto* conv = app.add_subcommand("convergents", "continued-fraction convergents");
    int count = 6;
    conv->add_option("--count", count)->required();

    // elliptic
    auto* ell = app.add_subcommand("elliptic", "Weierstrass-pair chunked expansion");
    long long efrom = 1, eto = 100, echunk = 2;
    ell->add_option("--from", efrom)->required();
    ell->add_option("--to", eto)->required();
    ell->add_option("--chunk", echunk, "block size (default 2)");
    bool ecompare = false;
    ell->add_flag("--compare-direct", ecompare, "also evaluate the direct partial sum");

    // slope-field
    auto* slope = app.add_subcommand("slope-field", "rows (t, Lambda'(t)) with Lambda' = -(pi/sqrt3) psi'''");
    double t_lo = 1.0, t_hi = 10.0;
    int steps = 10;
    slope->add_option("--t-lo", t_lo)->required();
    slope->add_option("--t-hi", t_hi)->required();
    slope->add_option("--steps", steps)->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run the verification suites");
    std::string suite = "all";
    ver->add_option("--suite", suite, "identities|golden|all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunConfig cfg = effective_config(g);

    if (ver->parsed()) return cmd_verify(cfg, suite);

    if (sum->parsed()) {
        ResultEnvelope env;
        env.command = "sum";
        env.params = {{"kernel", kernel}, {"v", v}, {"s", s}, {"phi", phi},
                      {"from", from}, {"to", to}};
        if (!chi.empty()) env.params["weight_period"] = chi;
        if (!expw.empty()) env.params["weight_exp"] = expw;
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            auto spec = make_spec(kernel, v, s, phi, chi, expw);
            auto rep = dds::series::partial_sum(spec, from, to);
            e.results = {{"value", rep.value.to_double()},
                         {"n_terms", rep.n_terms},
                         {"max_term", rep.max_term},
                         {"max_term_index", rep.max_term_index}};
            e.diagnostics = {{"spikes", spikes_json(rep.spikes)},
                             {"error_bound", rep.error_bound},
                             {"value_lo", rep.value.lo}};
        });
    }

    if (lambda->parsed()) {
        ResultEnvelope env;
        env.command = "lambda";
        env.params = {{"sigma", sigma}, {"path", path}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            if (path != "bessel" && path != "elementary" && path != "both")
                throw dds::ParseError("unknown path '" + path + "'");
            e.results = json::object();
            double via_bessel = 0.0, via_elem = 0.0;
            if (path != "elementary") {
                auto res = dds::series::lambda_bessel_hp(sigma);
                via_bessel = res.value.to_double();
                e.results["lambda"] = via_bessel;
                e.results["lambda_bessel"] = via_bessel;
                e.diagnostics["max_imag_residual"] = res.max_imag_residual;
            }
            if (path != "bessel") {
                via_elem = dds::series::lambda_elementary(sigma);
                e.results["lambda_elementary"] = via_elem;
                if (path == "elementary") e.results["lambda"] = via_elem;
            }
            if (path == "both" && via_bessel != 0.0)
                e.diagnostics["path_rel_gap"] =
                    std::fabs(via_bessel - via_elem) / std::fabs(via_bessel);
        });
    }

    if (reconstruct->parsed()) {
        ResultEnvelope env;
        env.command = "reconstruct";
        env.params = {{"sigma", rsigma}, {"compare_direct", rcompare}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            dds::HiPrec psi = dds::series::psi_reconstruction_hp(rsigma);
            e.results = {{"psi", psi.to_double()}};
            e.results["zeta3_term"] =
                (dds::HiPrec(4.0) / dds::HiPrec(3.0) * dds::sf::zeta_hp(3.0)).to_double();
            e.results["psi2"] = dds::sf::polygamma(dds::sf::PolygammaOrder(2),
                                                   static_cast<double>(rsigma));
            if (rcompare) {
                dds::series::SeriesSpec spec;
                auto direct = dds::series::partial_sum(spec, 1, rsigma - 1);
                e.results["direct_sum"] = direct.value.to_double();
                e.diagnostics["reconstruction_rel_gap"] =
                    std::fabs((psi - direct.value).to_double()) /
                    std::fabs(direct.value.to_double());
            }
        });
    }

    if (bnd->parsed()) {
        ResultEnvelope env;
        env.command = "bounds";
        env.params = {{"sigma", bsigma}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            auto rep = dds::bounds::double_sided_bounds(bsigma);
            e.results = {{"lower", rep.lower},
                         {"upper", rep.upper},
                         {"psi", rep.psi_value},
                         {"inside", rep.inside}};
            e.diagnostics = {{"margin_lower", rep.margin_lower},
                             {"margin_upper", rep.margin_upper},
                             {"middle_lower", rep.middle_lower},
                             {"middle_upper", rep.middle_upper},
                             {"lambda_term", rep.lambda_term},
                             {"psi1_sq_term", rep.psi1_sq_term}};
        });
    }

    if (holder->parsed()) {
        bool weighted = hx_opt->count() > 0;
        ResultEnvelope env;
        env.command = "holder";
        env.params = {{"p", hp}, {"N", hN}};
        if (weighted) env.params["x"] = hx;
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            auto rep = weighted ? dds::bounds::fermi_weighted_holder(hp, hx, hN)
                                : dds::bounds::holder_truncated(hp, hN);
            e.results = {{"lhs", rep.lhs},
                         {"rhs", rep.rhs},
                         {"satisfied", rep.satisfied},
                         {"margin", rep.margin}};
            for (const auto& [k, val] : rep.params) e.diagnostics[k] = val;
        });
    }

    if (fermi->parsed()) {
        ResultEnvelope env;
        env.command = "fermi";
        env.params = {{"p", fp}, {"x", fx}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            double val = dds::sf::fermi_dirac_F(fp, fx);
            e.results = {{"value", val}};
            if (fx == 0.0) {
                double closed = (1.0 - std::pow(2.0, -fp)) * dds::sf::zeta(fp + 1.0);
                e.diagnostics["closed_form"] = closed;
                e.diagnostics["closed_form_rel_gap"] =
                    std::fabs(val - closed) / std::fabs(closed);
            }
        });
    }

    if (spikes->parsed()) {
        ResultEnvelope env;
        env.command = "spikes";
        env.params = {{"n_max", n_max}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            auto records = dds::dio::spike_correlate(n_max);
            json rows = json::array();
            for (const auto& r : records)
                rows.push_back({{"index", r.index},
                                {"csc_abs", r.csc_abs},
                                {"is_convergent_numerator", r.is_convergent_numerator}});
            e.results = {{"rows", rows},
                         {"records", static_cast<long long>(records.size())}};
        });
    }

    if (conv->parsed()) {
        ResultEnvelope env;
        env.command = "convergents";
        env.params = {{"count", count},
                      {"source", cfg.pi_digits_path ? *cfg.pi_digits_path : "builtin-pi"}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            auto list = dds::dio::convergents_of(pi_digits_for(cfg), count);
            json rows = json::array();
            for (const auto& c : list)
                rows.push_back({{"p", c.p.str()},
                                {"q", c.q.str()},
                                {"abs_error", c.abs_error},
                                {"eff_exponent", c.eff_exponent},
                                {"exact", c.exact}});
            e.results = {{"rows", rows}};
            try {
                e.results["effective_mu"] = dds::dio::effective_mu(list);
            } catch (const dds::DomainError&) {
                e.results["effective_mu"] = nullptr;
            }
            json hist = json::array();
            for (const auto& h : dds::dio::mu_history())
                hist.push_back({{"bound", h.bound}, {"author", h.author}, {"year", h.year}});
            e.diagnostics["mu_history"] = hist;
        });
    }

    if (ell->parsed()) {
        ResultEnvelope env;
        env.command = "elliptic";
        env.params = {{"from", efrom}, {"to", eto}, {"chunk", echunk}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            auto rep = dds::ec::full_expansion(efrom, eto, echunk);
            e.results = {{"kappa_total", rep.kappa_total},
                         {"correction_sum", rep.correction_sum},
                         {"value", rep.value}};
            e.diagnostics = {{"blocks", rep.blocks},
                             {"max_residual", rep.max_residual}};
            if (ecompare) {
                dds::series::SeriesSpec spec;
                auto direct = dds::series::partial_sum(spec, efrom, eto);
                e.results["direct_sum"] = direct.value.to_double();
                e.diagnostics["rel_gap"] =
                    std::fabs((rep.value_hp - direct.value).to_double()) /
                    std::fabs(direct.value.to_double());
            }
        });
    }

    if (slope->parsed()) {
        ResultEnvelope env;
        env.command = "slope-field";
        env.params = {{"t_lo", t_lo}, {"t_hi", t_hi}, {"steps", steps}};
        return run_command(cfg, env, [&](ResultEnvelope& e) {
            if (!(0.0 < t_lo && t_lo < t_hi) || steps < 2)
                throw dds::DomainError("slope-field requires 0 < t_lo < t_hi and steps >= 2");
            json rows = json::array();
            dds::HiPrec c = -(dds::pi_hp() / dds::sqrt(dds::HiPrec(3.0)));
            for (int i = 0; i < steps; ++i) {
                double t = t_lo + (t_hi - t_lo) * i / (steps - 1);
                double lp = (c * dds::sf::polygamma_hp(3, dds::HiPrec(t))).to_double();
                rows.push_back({{"t", t}, {"lambda_prime", lp}});
            }
            e.results = {{"rows", rows}};
        });
    }

    std::cerr << "no subcommand given\n";
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    bool json_mode = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--format" && i + 1 < argc && std::string(argv[i + 1]) == "json")
            json_mode = true;
        if (a == "--format=json") json_mode = true;
    }
    auto emit_error = [&](const std::string& type, const std::string& what, int code) {
        if (json_mode) {
            nlohmann::json err = {{"error", {{"type", type}, {"message", what}}},
                                  {"tool_version", DDS_VERSION}};
            dds::io::emit_json(err, std::cout);
            std::cout << "\n";
        } else {
            std::cerr << "error (" << type << "): " << what << "\n";
        }
        return code;
    };
    try {
        return dispatch(argc, argv);
    } catch (const dds::CommonDiscontinuityError& e) {
        return emit_error("common-discontinuity", e.what(), kExitPole);
    } catch (const dds::PoleError& e) {
        return emit_error("pole", e.what(), kExitPole);
    } catch (const dds::ConsistencyError& e) {
        return emit_error("consistency", e.what(), kExitVerifyFail);
    } catch (const dds::DomainError& e) {
        return emit_error("domain", e.what(), kExitDomain);
    } catch (const dds::RangeError& e) {
        return emit_error("range", e.what(), kExitDomain);
    } catch (const dds::ParseError& e) {
        return emit_error("parse", e.what(), kExitDomain);
    } catch (const dds::DepthError& e) {
        return emit_error("depth", e.what(), kExitDomain);
    } catch (const dds::UnsupportedParameterError& e) {
        return emit_error("unsupported-parameter", e.what(), kExitDomain);
    } catch (const dds::Error& e) {
        return emit_error("error", e.what(), kExitDomain);
    } catch (const std::exception& e) {
        return emit_error("internal", e.what(), kExitVerifyFail);
    }
}
