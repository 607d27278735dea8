#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "llrss/asymptotics.hpp"
#include "llrss/classical.hpp"
#include "llrss/dpd.hpp"
#include "llrss/harness.hpp"
#include "llrss/report.hpp"
#include "llrss/verify.hpp"

namespace llrss::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> to_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) return std::nullopt;
    return v;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// Accepts a bare column of values (one RSS cycle in rank order) or a header
// naming y plus optional rank and set_size columns.
RankedSample read_sample(std::istream& is) {
    enum class Col { y, rank, size };
    std::vector<Col> cols;
    bool have_layout = false;
    std::vector<std::pair<std::size_t, double>> rows;  // (rank or 0, y)
    std::optional<std::size_t> declared_n;
    std::size_t declared_line = 0;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (!have_layout) {
            have_layout = true;
            const bool numeric = std::all_of(cells.begin(), cells.end(), [](const std::string& c) {
                return to_number(c).has_value();
            });
            if (!numeric) {
                for (const auto& name : cells) {
                    if (name == "y" || name == "value") cols.push_back(Col::y);
                    else if (name == "rank" || name == "i") cols.push_back(Col::rank);
                    else if (name == "set_size" || name == "n") cols.push_back(Col::size);
                    else throw UsageError(at_line(line_no) + "unknown column '" + name + "'");
                }
                if (std::count(cols.begin(), cols.end(), Col::y) != 1)
                    throw UsageError(at_line(line_no) + "header must name exactly one y column");
                continue;
            }
            if (cells.size() != 1)
                throw UsageError(at_line(line_no) + "multi-column input needs a header (y, rank, set_size)");
            cols = {Col::y};
        }
        if (cells.size() != cols.size()) {
            throw UsageError(at_line(line_no) + "expected " + std::to_string(cols.size()) + " fields, found " +
                             std::to_string(cells.size()));
        }
        std::size_t rank = 0;
        double y = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const auto v = to_number(cells[k]);
            if (!v) throw UsageError(at_line(line_no) + "not a number: '" + cells[k] + "'");
            if (cols[k] == Col::y) {
                if (!(*v > 0.0) || !std::isfinite(*v))
                    throw UsageError(at_line(line_no) + "y must be positive and finite");
                y = *v;
                continue;
            }
            if (!(*v >= 1.0) || *v != std::floor(*v) || *v > 1e9)
                throw UsageError(at_line(line_no) + "rank and set size must be positive integers");
            const auto iv = static_cast<std::size_t>(*v);
            if (cols[k] == Col::rank) {
                rank = iv;
            } else if (!declared_n) {
                declared_n = iv;
                declared_line = line_no;
            } else if (*declared_n != iv) {
                throw UsageError(at_line(line_no) + "set size differs from earlier rows");
            }
        }
        rows.emplace_back(rank, y);
    }
    if (rows.empty()) throw UsageError("input contains no observations");

    const std::size_t n = rows.size();
    if (declared_n && *declared_n != n) {
        throw UsageError(at_line(declared_line) + "set size " + std::to_string(*declared_n) +
                         " does not match the " + std::to_string(n) + " observations (one balanced cycle expected)");
    }
    std::vector<double> values(n);
    const bool ranked = std::find(cols.begin(), cols.end(), Col::rank) != cols.end();
    if (!ranked) {
        for (std::size_t k = 0; k < n; ++k) values[k] = rows[k].second;
        return RankedSample(std::move(values));
    }
    std::vector<bool> seen(n, false);
    for (const auto& [rank, y] : rows) {
        if (rank > n) throw UsageError("rank " + std::to_string(rank) + " exceeds the set size " + std::to_string(n));
        if (seen[rank - 1]) throw UsageError("rank " + std::to_string(rank) + " appears twice");
        seen[rank - 1] = true;
        values[rank - 1] = y;
    }
    return RankedSample(std::move(values));
}

int cmd_fit(const std::string& input, const std::string& estimator, std::optional<double> tau, bool want_cov,
            const std::string& format, std::istream& in, std::ostream& out, std::ostream& err) {
    const EstimatorKind kind = *parse_estimator(estimator);
    if (kind == EstimatorKind::dpd && !tau) throw UsageError("--estimator dpd requires --tau");
    if (kind != EstimatorKind::dpd && tau) throw UsageError("--tau only applies to --estimator dpd");
    if (tau && !(*tau > 0.0)) throw UsageError("--tau must be positive");
    if (want_cov && kind != EstimatorKind::mle && kind != EstimatorKind::dpd)
        throw UsageError("--cov is available for mle and dpd only");

    std::optional<RankedSample> sample;
    if (input == "-") {
        sample = read_sample(in);
    } else {
        std::ifstream file(input);
        if (!file) throw UsageError("cannot open input file '" + input + "'");
        sample = read_sample(file);
    }

    report::FitReport rep;
    rep.estimator = estimator;
    rep.tau = tau;
    rep.n = sample->n();
    try {
        if (kind == EstimatorKind::mle || kind == EstimatorKind::dpd) {
            const FitResult fit = kind == EstimatorKind::mle ? classical::fit_mle(*sample)
                                                             : dpd::fit_mdpde(*sample, Tuning(*tau));
            rep.alpha = fit.params.alpha();
            rep.beta = fit.params.beta();
            rep.converged = fit.converged;
            rep.iterations = fit.iterations;
            rep.grad_norm = fit.grad_norm;
            rep.objective = fit.objective;
        } else {
            const LLParams p = kind == EstimatorKind::rm   ? classical::fit_rm(*sample)
                               : kind == EstimatorKind::sm ? classical::fit_sm(*sample)
                                                           : classical::fit_hl(*sample);
            rep.alpha = p.alpha();
            rep.beta = p.beta();
        }
    } catch (const std::domain_error& e) {
        throw UsageError(std::string("the data do not support this estimator: ") + e.what());
    }

    if (rep.converged && !*rep.converged) {
        err << "error: the optimizer did not converge (gradient norm " << *rep.grad_norm << "); partial result:\n";
        report::write_fit_json(err, rep);
        return kNotConverged;
    }
    if (want_cov) {
        try {
            rep.cov = asym::sandwich(LLParams(rep.alpha, rep.beta), rep.n, Tuning(tau.value_or(0.0)));
        } catch (const std::exception& e) {
            throw UsageError(std::string("covariance unavailable: ") + e.what());
        }
    }
    if (format == "csv") {
        report::write_fit_csv(out, rep);
    } else {
        report::write_fit_json(out, rep);
    }
    return kOk;
}

struct SimulateArgs {
    std::size_t n = 100;
    double alpha = 1.0;
    double beta = 5.0;
    std::size_t reps = 1000;
    std::vector<double> taus = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::string scenario = "none";
    std::optional<double> p;
    bool p_grid = false;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "csv";
    std::size_t threads = 0;
    std::vector<std::string> estimators = {"mle", "dpd", "rm", "sm", "hl"};
    std::string sampler = "literal";
    bool contaminate_sets = false;
};

SimConfig base_config(const SimulateArgs& a) {
    if (a.reps < 1) throw UsageError("--reps must be at least 1");
    if (a.n < 1) throw UsageError("--n must be at least 1");
    if (!(a.alpha > 0.0) || !(a.beta > 0.0)) throw UsageError("--alpha and --beta must be positive");
    SimConfig c;
    c.truth = LLParams(a.alpha, a.beta);
    c.n = a.n;
    c.reps = a.reps;
    c.taus = a.taus;
    c.seed = a.seed;
    c.threads = a.threads;
    c.sampler = a.sampler == "direct" ? SamplerKind::direct : SamplerKind::literal;
    c.contaminate_before_ranking = a.contaminate_sets;
    c.estimators.clear();
    for (const auto& e : a.estimators) {
        const auto k = parse_estimator(e);
        if (!k) throw UsageError("unknown estimator '" + e + "'");
        if (std::find(c.estimators.begin(), c.estimators.end(), *k) == c.estimators.end()) c.estimators.push_back(*k);
    }
    const auto kind = parse_contamination_case(a.scenario);
    if (!kind) throw UsageError("--case must be one of none, 1, 2, 3, 4");
    c.scenario.kind = *kind;
    if (a.p && a.p_grid) throw UsageError("--p and --p-grid are mutually exclusive");
    if (*kind == ContaminationCase::none && (a.p_grid || (a.p && *a.p != 0.0)))
        throw UsageError("contamination proportion given without a --case");
    if (*kind != ContaminationCase::none && !a.p && !a.p_grid)
        throw UsageError("--case needs --p or --p-grid");
    c.scenario.p = a.p.value_or(0.0);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const SimConfig base = base_config(a);
    std::vector<SimConfig> configs;
    if (a.p_grid) {
        for (double p : harness::p_grid()) {
            SimConfig c = base;
            c.scenario.p = p;
            configs.push_back(c);
        }
    } else {
        configs.push_back(base);
    }
    const auto results = harness::sweep(configs);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!a.out_path.empty() && a.out_path != "-") {
        file.open(a.out_path);
        if (!file) throw UsageError("cannot open output file '" + a.out_path + "'");
        sink = &file;
    }
    if (a.format == "json") {
        report::write_sim_json(*sink, results);
    } else {
        report::write_sim_csv(*sink, results);
    }
    return kOk;
}

int cmd_verify(const std::string& grid, bool flip_a3, double tol, std::ostream& out, std::ostream& err) {
    verify::GridOptions opt;
    opt.grid = grid == "full" ? verify::Grid::full : verify::Grid::small;
    opt.tol = tol;
    if (flip_a3) opt.variant.a3 = +1.0;
    const auto rep = verify::run_grid(opt);
    const auto ids = verify::run_identities();

    bool ok = rep.pass;
    out << "grid " << grid << ": " << rep.configurations << " rank configurations, tolerance " << tol << ", "
        << std::fixed << std::setprecision(2) << rep.seconds << " s\n";
    out << std::defaultfloat << std::setprecision(3);
    for (const auto& f : rep.formulas) {
        out << (f.pass ? "PASS " : "FAIL ") << std::left << std::setw(14) << f.name << std::right
            << " max_rel_err=" << std::scientific << f.max_rel_err << std::defaultfloat << " worst: " << f.worst_config
            << '\n';
        if (!f.pass) err << "verify: " << f.name << " exceeds tolerance at " << f.worst_config << '\n';
    }
    for (const auto& c : ids) {
        out << (c.pass ? "PASS " : "FAIL ") << "identity " << c.name << " max_err=" << std::scientific << c.max_err
            << std::defaultfloat << '\n';
        ok = ok && c.pass;
        if (!c.pass) err << "verify: identity " << c.name << " fails\n";
    }
    for (const auto& s : rep.signs) {
        out << "sign " << s.term << ": oracle supports " << s.validated << " (minus err " << std::scientific
            << s.err_minus << ", plus err " << s.err_plus << std::defaultfloat << ")\n";
    }
    return ok ? kOk : kVerifyFailed;
}

int cmd_sample(std::size_t n, double alpha, double beta, std::uint64_t seed, const std::string& scenario,
               double p, const std::string& sampler, const std::string& out_path, std::ostream& out) {
    if (n < 1) throw UsageError("--n must be at least 1");
    if (!(alpha > 0.0) || !(beta > 0.0)) throw UsageError("--alpha and --beta must be positive");
    const auto kind = parse_contamination_case(scenario);
    if (!kind) throw UsageError("--case must be one of none, 1, 2, 3, 4");
    SimConfig c;
    c.truth = LLParams(alpha, beta);
    c.n = n;
    c.seed = seed;
    c.scenario = {*kind, p};
    c.sampler = sampler == "direct" ? SamplerKind::direct : SamplerKind::literal;
    try {
        c.scenario.validate();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    const RankedSample s = harness::replication_sample(c, 0);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw UsageError("cannot open output file '" + out_path + "'");
        sink = &file;
    }
    *sink << "rank,set_size,y\n" << std::setprecision(17);
    for (std::size_t i = 0; i < s.n(); ++i) *sink << (i + 1) << ',' << s.n() << ',' << s[i] << '\n';
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robust log-logistic estimation from ranked set samples", "llrss"};
    app.require_subcommand(1);

    auto* fit = app.add_subcommand("fit", "Fit an estimator to a ranked set sample");
    std::string input, estimator, fit_format = "json";
    double tau_value = 0.0;
    bool want_cov = false;
    fit->add_option("--input", input, "CSV file, or - for stdin")->required();
    fit->add_option("--estimator", estimator, "mle, dpd, rm, sm or hl")
        ->required()
        ->check(CLI::IsMember({"mle", "dpd", "rm", "sm", "hl"}));
    auto* tau_opt = fit->add_option("--tau", tau_value, "DPD tuning parameter (dpd only)");
    fit->add_flag("--cov", want_cov, "Attach the asymptotic covariance and standard errors");
    fit->add_option("--format", fit_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* sim = app.add_subcommand("simulate", "Monte Carlo Bias/RMSE study");
    SimulateArgs sa;
    double p_value = 0.0;
    sim->add_option("--n", sa.n, "Set size and sample size");
    sim->add_option("--alpha", sa.alpha, "True scale");
    sim->add_option("--beta", sa.beta, "True shape");
    sim->add_option("--reps", sa.reps, "Replications");
    sim->add_option("--taus", sa.taus, "Comma-separated DPD tuning values")->delimiter(',');
    sim->add_option("--case", sa.scenario, "Contamination case: none, 1, 2, 3, 4");
    auto* p_opt = sim->add_option("--p", p_value, "Contamination proportion");
    sim->add_flag("--p-grid", sa.p_grid, "Sweep p over 0, 0.05, ..., 0.40");
    sim->add_option("--seed", sa.seed, "Master seed");
    sim->add_option("--out", sa.out_path, "Output path (default stdout)");
    sim->add_option("--format", sa.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--threads", sa.threads, "Worker threads (default LLRSS_THREADS or all cores)");
    sim->add_option("--estimators", sa.estimators, "Comma-separated subset of mle,dpd,rm,sm,hl")->delimiter(',');
    sim->add_option("--sampler", sa.sampler, "literal or direct")->check(CLI::IsMember({"literal", "direct"}));
    sim->add_flag("--contaminate-sets", sa.contaminate_sets, "Contaminate raw sets before ranking");

    auto* ver = app.add_subcommand("verify", "Check closed forms against numerical quadrature");
    std::string grid = "small";
    bool flip_a3 = false;
    double tol = 1e-6;
    ver->add_option("--grid", grid, "small or full")->check(CLI::IsMember({"small", "full"}));
    ver->add_flag("--flip-a3", flip_a3, "Use the opposite A3 sign (negative control)");
    ver->add_option("--tol", tol, "Maximum relative error");

    auto* smp = app.add_subcommand("sample", "Draw one ranked set sample as CSV");
    std::size_t s_n = 100;
    double s_alpha = 1.0, s_beta = 5.0, s_p = 0.0;
    std::uint64_t s_seed = 1;
    std::string s_case = "none", s_sampler = "literal", s_out;
    smp->add_option("--n", s_n, "Set size and sample size");
    smp->add_option("--alpha", s_alpha, "True scale");
    smp->add_option("--beta", s_beta, "True shape");
    smp->add_option("--seed", s_seed, "Seed");
    smp->add_option("--case", s_case, "Contamination case: none, 1, 2, 3, 4");
    smp->add_option("--p", s_p, "Contamination proportion");
    smp->add_option("--sampler", s_sampler, "literal or direct")->check(CLI::IsMember({"literal", "direct"}));
    smp->add_option("--out", s_out, "Output path (default stdout)");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("llrss");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*fit) {
            return cmd_fit(input, estimator, tau_opt->count() ? std::optional<double>(tau_value) : std::nullopt,
                           want_cov, fit_format, in, out, err);
        }
        if (*sim) {
            if (p_opt->count()) sa.p = p_value;
            return cmd_simulate(sa, out);
        }
        if (*ver) return cmd_verify(grid, flip_a3, tol, out, err);
        if (*smp) return cmd_sample(s_n, s_alpha, s_beta, s_seed, s_case, s_p, s_sampler, s_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace llrss::cli
