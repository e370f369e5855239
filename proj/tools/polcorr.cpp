// polcorr: command-line front end for the polarization-correlation library.
//
//   polcorr eval   --scenario S --beta B --chi1 D... --chi2 D...
//   polcorr bell   --scenario S --beta B --chi1 D --chi2 D --chi1p D --chi2p D
//   polcorr scan   --scenario S (--betas B... | --beta-min --beta-max --beta-step)
//   polcorr sweep  --scenario S --beta-min --beta-max --beta-step (angles | --scan)
//   polcorr verify [--quick] [--perturb-rho X]
//
// Angles are in degrees here and radians everywhere else. Exit status is 0 on
// success, 1 when a verification check fails and 2 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polcorr/bell.hpp"
#include "polcorr/correlations.hpp"
#include "polcorr/report.hpp"
#include "polcorr/verify.hpp"

namespace
{

using json = nlohmann::json;
using namespace polcorr;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::string command;
    std::string scenario;
    std::optional<double> beta;
    std::optional<double> beta_min;
    std::optional<double> beta_max;
    std::optional<double> beta_step;
    std::vector<double> betas;
    std::vector<double> chi1;
    std::vector<double> chi2;
    std::optional<double> chi1p;
    std::optional<double> chi2p;
    std::string format{"csv"};
    std::string output;
    double step_deg{3.0};
    bool refine{true};
    bool scan_mode{false};
    bool quick{false};
    double perturb_rho{0.0};
};

/// Values present in the file fill the config; flags given on the command
/// line are applied afterwards and win.
void load_config_file(std::string const& path, RunConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file " + path);
    json j;
    try
    {
        in >> j;
    }
    catch (json::exception const& e)
    {
        throw UsageError(std::string("bad config file: ") + e.what());
    }
    auto opt_num = [&](char const* key, std::optional<double>& dst) {
        if (j.contains(key))
            dst = j.at(key).get<double>();
    };
    auto num_list = [&](char const* key, std::vector<double>& dst) {
        if (!j.contains(key))
            return;
        if (j.at(key).is_array())
            dst = j.at(key).get<std::vector<double>>();
        else
            dst = {j.at(key).get<double>()};
    };
    if (j.contains("command"))
        cfg.command = j.at("command").get<std::string>();
    if (j.contains("scenario"))
        cfg.scenario = j.at("scenario").get<std::string>();
    opt_num("beta", cfg.beta);
    opt_num("beta_min", cfg.beta_min);
    opt_num("beta_max", cfg.beta_max);
    opt_num("beta_step", cfg.beta_step);
    num_list("betas", cfg.betas);
    num_list("chi1", cfg.chi1);
    num_list("chi2", cfg.chi2);
    opt_num("chi1p", cfg.chi1p);
    opt_num("chi2p", cfg.chi2p);
    if (j.contains("format"))
        cfg.format = j.at("format").get<std::string>();
    if (j.contains("output"))
        cfg.output = j.at("output").get<std::string>();
    if (j.contains("step"))
        cfg.step_deg = j.at("step").get<double>();
    if (j.contains("refine"))
        cfg.refine = j.at("refine").get<bool>();
    if (j.contains("scan"))
        cfg.scan_mode = j.at("scan").get<bool>();
    if (j.contains("quick"))
        cfg.quick = j.at("quick").get<bool>();
}

Scenario require_scenario(RunConfig const& cfg)
{
    if (cfg.scenario.empty())
        throw UsageError("--scenario is required");
    auto const s = scenario_from_name(cfg.scenario);
    if (!s)
        throw UsageError("unknown scenario '" + cfg.scenario + "'");
    return *s;
}

double require_degrees(double deg, char const* what)
{
    if (!(deg >= 0.0 && deg < 360.0))
        throw UsageError(std::string(what) + " must be in [0, 360) degrees");
    return degrees_to_radians(deg);
}

Speed require_speed(std::optional<double> const& beta)
{
    if (!beta)
        throw UsageError("--beta is required");
    if (!(*beta >= 0.0 && *beta <= 1.0))
        throw UsageError("--beta must lie in [0, 1]");
    return Speed(*beta);
}

double single(std::vector<double> const& v, char const* what)
{
    if (v.size() != 1)
        throw UsageError(std::string(what) + " takes exactly one angle for this command");
    return v.front();
}

BellAngles require_angles(RunConfig const& cfg)
{
    if (cfg.chi1.empty() || cfg.chi2.empty() || !cfg.chi1p || !cfg.chi2p)
        throw UsageError("--chi1, --chi2, --chi1p and --chi2p are required");
    return {require_degrees(single(cfg.chi1, "--chi1"), "--chi1"),
            require_degrees(single(cfg.chi2, "--chi2"), "--chi2"),
            require_degrees(*cfg.chi1p, "--chi1p"), require_degrees(*cfg.chi2p, "--chi2p")};
}

std::vector<double> require_beta_grid(RunConfig const& cfg)
{
    if (!cfg.betas.empty())
    {
        for (double b : cfg.betas)
            if (!(b >= 0.0 && b <= 1.0))
                throw UsageError("--betas entries must lie in [0, 1]");
        return cfg.betas;
    }
    if (!cfg.beta_min || !cfg.beta_max || !cfg.beta_step)
        throw UsageError("give --betas or all of --beta-min, --beta-max, --beta-step");
    if (!(*cfg.beta_step > 0.0))
        throw UsageError("--beta-step must be positive");
    if (!(*cfg.beta_max >= *cfg.beta_min))
        throw UsageError("empty beta range");
    if (!(*cfg.beta_min >= 0.0 && *cfg.beta_max <= 1.0))
        throw UsageError("beta range must lie in [0, 1]");
    return beta_range(*cfg.beta_min, *cfg.beta_max, *cfg.beta_step);
}

ScanOptions scan_options(RunConfig const& cfg)
{
    if (!(cfg.step_deg > 0.0 && cfg.step_deg <= 45.0))
        throw UsageError("--step must lie in (0, 45] degrees");
    ScanOptions o;
    o.coarse_step = degrees_to_radians(cfg.step_deg);
    o.refine = cfg.refine;
    return o;
}

void require_format(RunConfig const& cfg)
{
    if (cfg.format != "csv" && cfg.format != "json")
        throw UsageError("--format must be csv or json");
}

json angles_json(BellAngles const& a)
{
    return {{"chi1", radians_to_degrees(a.chi1)},
            {"chi2", radians_to_degrees(a.chi2)},
            {"chi1p", radians_to_degrees(a.chi1p)},
            {"chi2p", radians_to_degrees(a.chi2p)}};
}

json scan_json(ScanReport const& report)
{
    json points = json::array();
    for (auto const& p : report.points)
    {
        json row = angles_json(p.angles);
        row["beta"] = p.beta;
        row["best_s"] = p.result.s;
        row["violated"] = p.result.violated;
        row["margin"] = p.result.margin;
        points.push_back(row);
    }
    json out{{"scenario", traits(report.scenario).cli_name}, {"points", points}};
    if (report.violation_range)
        out["violation_range"] = {report.violation_range->first, report.violation_range->second};
    else
        out["violation_range"] = nullptr;
    out["violation_range_note"] = "found by search; a lower bound on the violating speeds";
    return out;
}

std::string cmd_eval(RunConfig const& cfg)
{
    Scenario const sc = require_scenario(cfg);
    Speed const speed = require_speed(cfg.beta);
    if (cfg.chi1.empty() || cfg.chi1.size() != cfg.chi2.size())
        throw UsageError("--chi1 and --chi2 need the same nonzero number of angles");
    std::vector<double> c1, c2;
    for (double d : cfg.chi1)
        c1.push_back(require_degrees(d, "--chi1"));
    for (double d : cfg.chi2)
        c2.push_back(require_degrees(d, "--chi2"));
    auto const rows = evaluate_pairs(sc, speed, c1, c2);
    if (cfg.format == "csv")
        return eval_csv(rows);
    json arr = json::array();
    for (auto const& r : rows)
        arr.push_back({{"chi1", radians_to_degrees(r.chi1)},
                       {"chi2", radians_to_degrees(r.chi2)},
                       {"p_joint", r.joint},
                       {"p_marg1", r.first},
                       {"p_marg2", r.second}});
    json out{{"command", "eval"}, {"scenario", traits(sc).cli_name}, {"beta", speed.beta()},
             {"rows", arr}};
    return out.dump(2) + "\n";
}

std::string cmd_bell(RunConfig const& cfg)
{
    Scenario const sc = require_scenario(cfg);
    Speed const speed = require_speed(cfg.beta);
    BellAngles const angles = require_angles(cfg);
    BellResult const r = s_value({sc, speed, angles});
    if (cfg.format == "csv")
    {
        return "s,violated,margin\n" + format_double(r.s) + ',' +
               (r.violated ? "true" : "false") + ',' + format_double(r.margin) + '\n';
    }
    // Echo the degrees as given so the output feeds back through --config unchanged.
    json out{{"chi1", cfg.chi1.front()}, {"chi2", cfg.chi2.front()}, {"chi1p", *cfg.chi1p},
             {"chi2p", *cfg.chi2p}};
    out["command"] = "bell";
    out["scenario"] = traits(sc).cli_name;
    out["beta"] = speed.beta();
    out["s"] = r.s;
    out["violated"] = r.violated;
    out["margin"] = r.margin;
    return out.dump(2) + "\n";
}

std::string cmd_scan(RunConfig const& cfg)
{
    Scenario const sc = require_scenario(cfg);
    std::vector<double> const grid = require_beta_grid(cfg);
    ScanReport const report = scan(sc, grid, scan_options(cfg));
    if (cfg.format == "json")
        return scan_json(report).dump(2) + "\n";
    if (report.violation_range)
    {
        std::cerr << "violation found (search lower bound) for beta in ["
                  << format_double(report.violation_range->first) << ", "
                  << format_double(report.violation_range->second) << "]\n";
    }
    else
    {
        std::cerr << "no violation found on this grid\n";
    }
    return scan_csv(report);
}

std::string cmd_sweep(RunConfig const& cfg)
{
    Scenario const sc = require_scenario(cfg);
    if (!cfg.beta_min || !cfg.beta_max || !cfg.beta_step)
        throw UsageError("sweep needs --beta-min, --beta-max and --beta-step");
    std::vector<double> const grid = require_beta_grid(cfg);
    if (cfg.scan_mode)
    {
        ScanReport const report = scan(sc, grid, scan_options(cfg));
        return cfg.format == "json" ? scan_json(report).dump(2) + "\n" : scan_csv(report);
    }
    auto const rows = sweep_fixed(sc, grid, require_angles(cfg));
    if (cfg.format == "csv")
        return sweep_csv(rows);
    json arr = json::array();
    for (auto const& r : rows)
        arr.push_back({{"beta", r.beta},
                       {"s", r.result.s},
                       {"violated", r.result.violated},
                       {"margin", r.result.margin}});
    return json{{"scenario", traits(sc).cli_name}, {"rows", arr}}.dump(2) + "\n";
}

int cmd_verify(RunConfig const& cfg, std::ostream& out)
{
    VerifyOptions opts;
    opts.quick = cfg.quick;
    opts.rho_shift = cfg.perturb_rho;
    auto const results = run_verification(opts);
    bool all = true;
    for (auto const& r : results)
    {
        all = all && r.passed;
        char line[160];
        std::snprintf(line, sizeof line, "%s  residual=%.3e  tol=%.1e  ",
                      r.passed ? "PASS" : "FAIL", r.max_residual, r.tolerance);
        out << line << r.name;
        if (!r.detail.empty())
            out << "  [" << r.detail << "]";
        out << '\n';
    }
    out << (all ? "all checks passed\n" : "some checks failed\n");
    return all ? kExitOk : kExitVerifyFailed;
}

void emit(RunConfig const& cfg, std::string const& text)
{
    if (cfg.output.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + cfg.output);
    f << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Speed-dependent QED polarization correlations and Bell/CH tests"};
    app.require_subcommand(0, 1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with run settings");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", cfg.scenario,
                        "moller-theta0 | moller-theta90 | photon-polarized | "
                        "moller-unpolarized | photon-unpolarized | spin0");
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
        sub->add_option("--config", config_path, "JSON file with run settings");
    };
    auto add_angles = [&](CLI::App* sub, bool primed) {
        sub->add_option("--chi1", cfg.chi1, "angle(s) of detector 1, degrees");
        sub->add_option("--chi2", cfg.chi2, "angle(s) of detector 2, degrees");
        if (primed)
        {
            sub->add_option("--chi1p", cfg.chi1p, "alternative angle of detector 1, degrees");
            sub->add_option("--chi2p", cfg.chi2p, "alternative angle of detector 2, degrees");
        }
    };
    auto add_beta_range = [&](CLI::App* sub) {
        sub->add_option("--beta-min", cfg.beta_min);
        sub->add_option("--beta-max", cfg.beta_max);
        sub->add_option("--beta-step", cfg.beta_step);
    };
    auto add_scan_params = [&](CLI::App* sub) {
        sub->add_option("--step", cfg.step_deg, "coarse grid step, degrees (default 3)");
        sub->add_flag("!--no-refine", cfg.refine, "skip the Nelder-Mead polish");
    };

    CLI::App* eval = app.add_subcommand("eval", "joint and single-detector probabilities");
    add_common(eval);
    eval->add_option("--beta", cfg.beta);
    add_angles(eval, false);

    CLI::App* bell = app.add_subcommand("bell", "S for one set of settings");
    add_common(bell);
    bell->add_option("--beta", cfg.beta);
    add_angles(bell, true);

    CLI::App* scan_cmd = app.add_subcommand("scan", "search angles for LHV violations");
    add_common(scan_cmd);
    scan_cmd->add_option("--betas", cfg.betas, "explicit speed grid");
    add_beta_range(scan_cmd);
    add_scan_params(scan_cmd);

    CLI::App* sweep = app.add_subcommand("sweep", "S (or best margin) across a speed range");
    add_common(sweep);
    add_beta_range(sweep);
    add_angles(sweep, true);
    sweep->add_flag("--scan", cfg.scan_mode, "search angles at every speed");
    add_scan_params(sweep);

    CLI::App* verify = app.add_subcommand("verify", "run the self-verification suite");
    verify->add_flag("--quick", cfg.quick, "reduced grids");
    verify->add_option("--perturb-rho", cfg.perturb_rho,
                       "shift rho inside the closed forms (diagnostic)");
    verify->add_option("--config", config_path, "JSON file with run settings");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        for (CLI::App* sub : app.get_subcommands())
            cfg.command = sub->get_name();

        if (!config_path.empty())
        {
            // Re-parse so that explicit flags override the file.
            RunConfig from_file;
            load_config_file(config_path, from_file);
            std::string const cmd = cfg.command.empty() ? from_file.command : cfg.command;
            RunConfig merged = from_file;
            merged.command = cmd;
            CLI::App* sub = cmd.empty() ? nullptr : app.get_subcommand_no_throw(cmd);
            if (sub != nullptr)
            {
                auto given = [&](char const* name) {
                    CLI::Option* o = sub->get_option_no_throw(name);
                    return o != nullptr && o->count() > 0;
                };
                if (given("--scenario")) merged.scenario = cfg.scenario;
                if (given("--format")) merged.format = cfg.format;
                if (given("--output")) merged.output = cfg.output;
                if (given("--beta")) merged.beta = cfg.beta;
                if (given("--beta-min")) merged.beta_min = cfg.beta_min;
                if (given("--beta-max")) merged.beta_max = cfg.beta_max;
                if (given("--beta-step")) merged.beta_step = cfg.beta_step;
                if (given("--betas")) merged.betas = cfg.betas;
                if (given("--chi1")) merged.chi1 = cfg.chi1;
                if (given("--chi2")) merged.chi2 = cfg.chi2;
                if (given("--chi1p")) merged.chi1p = cfg.chi1p;
                if (given("--chi2p")) merged.chi2p = cfg.chi2p;
                if (given("--step")) merged.step_deg = cfg.step_deg;
                if (given("--no-refine")) merged.refine = cfg.refine;
                if (given("--scan")) merged.scan_mode = cfg.scan_mode;
                if (given("--quick")) merged.quick = cfg.quick;
                if (given("--perturb-rho")) merged.perturb_rho = cfg.perturb_rho;
            }
            cfg = merged;
        }

        if (cfg.command.empty())
            throw UsageError("no command given (eval, bell, scan, sweep, verify)");
        require_format(cfg);

        if (cfg.command == "verify")
        {
            std::ostringstream report;
            int const code = cmd_verify(cfg, report);
            emit(cfg, report.str());
            return code;
        }
        std::string text;
        if (cfg.command == "eval")
            text = cmd_eval(cfg);
        else if (cfg.command == "bell")
            text = cmd_bell(cfg);
        else if (cfg.command == "scan")
            text = cmd_scan(cfg);
        else if (cfg.command == "sweep")
            text = cmd_sweep(cfg);
        else
            throw UsageError("unknown command '" + cfg.command + "'");
        emit(cfg, text);
        return kExitOk;
    }
    catch (UsageError const& e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (DomainError const& e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
}
