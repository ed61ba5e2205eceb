#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hours_effect/labor_models.hpp"
#include "hours_effect/meta_engine.hpp"
#include "hours_effect/policy_metrics.hpp"
#include "hours_effect/report.hpp"
#include "hours_effect/study_ledger.hpp"
#include "hours_effect/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hours_effect;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;    // parse/schema/parameter problems
constexpr int kExitEmpty = 3;    // filter left nothing to analyze
constexpr int kExitProperty = 4; // figure-consistency violation on the given params

fs::path resolve_out(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("HOURS_EFFECT_OUT"); env && *env) return env;
    return "out";
}

json equilibrium_json(const Equilibrium& eq) {
    return json{{"regime", std::string(to_string(eq.regime))}, {"hours", eq.hours},
                {"wage", eq.wage},                             {"employment", eq.employment},
                {"output", eq.output},                         {"profit", eq.profit}};
}

struct SweepRange {
    double lo, hi;
    int n;
};

SweepRange parse_sweep(const std::string& s) {
    SweepRange r{};
    const auto a = s.find(':');
    const auto b = s.rfind(':');
    if (a == std::string::npos || b == a)
        throw std::invalid_argument("--sweep expects lo:hi:n");
    try {
        r.lo = std::stod(s.substr(0, a));
        r.hi = std::stod(s.substr(a + 1, b - a - 1));
        r.n = std::stoi(s.substr(b + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--sweep expects numeric lo:hi:n");
    }
    if (r.n < 2 || !(r.lo < r.hi)) throw std::invalid_argument("--sweep needs lo < hi and n >= 2");
    return r;
}

int cmd_meta(const std::string& input, bool significant_only, bool cost_weighted_only, double z,
             const fs::path& out_dir) {
    const std::string csv = read_file(input);
    Provenance prov;
    prov.add(input, csv);

    std::vector<StudyObservation> ledger;
    try {
        ledger = parse_ledger(csv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << input << ": " << e.what() << "\n";
        return kExitInput;
    }

    // The primary view reads each study once; alternate cost-adjusted readings
    // only enter when the cost-weighted analysis asks for them.
    FilterSpec spec;
    if (significant_only) spec.require_significant = true;
    if (cost_weighted_only)
        spec.require_cost_weighted = true;
    else
        spec.exclude_tags.insert(std::string(kAlternateReadingTag));

    MetaResult result;
    try {
        result = run_meta(ledger, spec, z);
    } catch (const EmptySelection& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    }
    const auto obs = apply_filter(ledger, spec);

    json j = meta_to_json(result);
    j["filter"] = {{"require_significant", spec.require_significant},
                   {"require_cost_weighted", spec.require_cost_weighted},
                   {"exclude_tags", spec.exclude_tags}};
    j["provenance"] = provenance_to_json(prov);
    write_file(out_dir / "meta.json", j.dump(2) + "\n");
    write_file(out_dir / "meta_table.txt", render_meta_table(obs, result));
    write_file(out_dir / "forest.svg", forest_svg(obs, result, "Observed elasticities"));

    std::cout << "k=" << result.k << " r_bar=" << format_scalar(result.r_bar) << " interval=["
              << format_scalar(result.ci_low) << ", " << format_scalar(result.ci_high) << "]\n";
    return kExitOk;
}

int report_violations(const std::vector<std::string>& violations) {
    for (const auto& v : violations) std::cerr << "property violation: " << v << "\n";
    return violations.empty() ? kExitOk : kExitProperty;
}

int cmd_simulate(const std::string& model, const std::string& params_path,
                 std::optional<double> cap, const std::string& sweep_arg,
                 const std::string& regime_arg, const fs::path& out_dir) {
    const std::string params_text = read_file(params_path);
    Provenance prov;
    prov.add(params_path, params_text);
    const json pj = json::parse(params_text);

    if (model == "bargaining") {
        const BargainParams bp = bargain_params_from_json(pj);
        const CapResponse curve = bargaining_employment_curve(bp);
        const auto [h_max, l_max] = find_h_max(curve);
        const double h_b = bargained_hours_effective(bp);
        write_file(out_dir / "bargaining_curve.csv", cap_response_csv(curve));
        write_file(out_dir / "bargaining.svg",
                   curve_svg(curve, {{"H_max", h_max}, {"H_b", h_b}},
                             "Employment under collective bargaining"));
        json j{{"h_max", h_max},
               {"employment_at_h_max", l_max},
               {"h_b", h_b},
               {"firm_preferred_hours", firm_preferred_hours(bp)},
               {"provenance", provenance_to_json(prov)}};
        write_file(out_dir / "bargaining.json", j.dump(2) + "\n");
        std::cout << "H_max=" << format_scalar(h_max) << " H_b=" << format_scalar(h_b) << "\n";
        return report_violations(figure_violations_bargaining(curve));
    }

    const MonopsonyParams mp = monopsony_params_from_json(pj);
    const Equilibrium mono = solve_monopsony(mp);
    const Equilibrium comp = solve_competitive(mp);

    if (model == "competitive") {
        const WageRegime regime = regime_arg == "proportional_hourly"
                                      ? WageRegime::proportional_hourly
                                      : WageRegime::fixed_monthly;
        if (!regime_arg.empty() && regime_arg != "proportional_hourly" &&
            regime_arg != "fixed_monthly")
            throw std::invalid_argument("--regime must be fixed_monthly or proportional_hourly");
        CapResponse resp;
        resp.wage_regime = regime;
        if (!sweep_arg.empty()) {
            const SweepRange sr = parse_sweep(sweep_arg);
            const GridSpec caps{sr.lo, sr.hi, sr.n};
            for (int k = 0; k < caps.points; ++k)
                resp.points.push_back(competitive_cap_scenario(mp, caps.at(k), regime, comp));
        } else {
            const double c = cap.value_or(comp.hours);
            resp.points.push_back(competitive_cap_scenario(mp, c, regime, comp));
        }
        write_file(out_dir / "competitive_curve.csv", cap_response_csv(resp));
        write_file(out_dir / "competitive.svg",
                   curve_svg(resp, {{"H_C", comp.hours}}, "Employment under a capped "
                                                          "competitive market"));
        json j{{"uncapped", equilibrium_json(comp)},
               {"regime", std::string(to_string(regime))},
               {"points", resp.points.size()},
               {"provenance", provenance_to_json(prov)}};
        write_file(out_dir / "competitive.json", j.dump(2) + "\n");
        std::cout << "H_C=" << format_scalar(comp.hours) << " L_C="
                  << format_scalar(comp.employment) << "\n";
        // the pay-preserving regime can never beat the proportional one
        std::vector<std::string> violations;
        for (const auto& pt : resp.points) {
            const CapPoint fixed =
                competitive_cap_scenario(mp, pt.cap, WageRegime::fixed_monthly, comp);
            const CapPoint prop =
                competitive_cap_scenario(mp, pt.cap, WageRegime::proportional_hourly, comp);
            if (fixed.employment > prop.employment + 1e-12) {
                violations.push_back("fixed-pay employment exceeds proportional-pay employment "
                                     "at cap " + std::to_string(pt.cap));
                break;
            }
        }
        return report_violations(violations);
    }

    if (model != "monopsony")
        throw std::invalid_argument("--model must be monopsony, bargaining or competitive");

    GridSpec caps = mp.hours_grid;
    if (!sweep_arg.empty()) {
        const SweepRange sr = parse_sweep(sweep_arg);
        caps = GridSpec{sr.lo, sr.hi, sr.n};
    }
    CapResponse sweep = monopsony_cap_sweep(mp, caps, mono);
    // property checks always look at the whole grid; a narrow user sweep is
    // not evidence about the peak location
    const CapResponse check_sweep =
        sweep_arg.empty() ? sweep : monopsony_cap_sweep(mp, mp.hours_grid, mono);
    if (cap) {
        if (!(*cap >= mp.hours_grid.min && *cap <= mp.hours_grid.max))
            throw std::invalid_argument("--cap must lie within the hours grid");
        CapResponse single;
        single.wage_regime = sweep.wage_regime;
        const auto full = monopsony_cap_sweep(mp, mp.hours_grid, mono);
        single.points.push_back(full.points[static_cast<std::size_t>(
            mp.hours_grid.index_near(*cap))]);
        write_file(out_dir / "monopsony_cap.csv", cap_response_csv(single));
    }
    write_file(out_dir / "monopsony_curve.csv", cap_response_csv(sweep));
    write_file(out_dir / "monopsony.svg",
               curve_svg(sweep, {{"H_C", comp.hours}, {"H_M", mono.hours}},
                         "Employment under a capped monopsony"));
    json j{{"monopsony", equilibrium_json(mono)},
           {"competitive", equilibrium_json(comp)},
           {"sweep_points", sweep.points.size()},
           {"wage_regime", std::string(to_string(sweep.wage_regime))},
           {"provenance", provenance_to_json(prov)}};
    write_file(out_dir / "monopsony.json", j.dump(2) + "\n");
    std::cout << "H_M=" << format_scalar(mono.hours) << " H_C=" << format_scalar(comp.hours)
              << " L_M=" << format_scalar(mono.employment) << " L_C="
              << format_scalar(comp.employment) << "\n";
    return report_violations(figure_violations_monopsony(mp, mono, comp, check_sweep));
}

int cmd_policy(const std::string& ledger_path, bool apply_offsets, const fs::path& out_dir) {
    const std::string text = read_file(ledger_path);
    Provenance prov;
    prov.add(ledger_path, text);
    const PolicyCostLedger ledger = policy_ledger_from_json(json::parse(text));
    const CostPerJob r = cost_per_job(ledger, apply_offsets);

    json j = cost_per_job_to_json(r);
    j["jobs"] = ledger.jobs;
    j["provenance"] = provenance_to_json(prov);
    write_file(out_dir / "policy.json", j.dump(2) + "\n");

    std::cout << "net cost range: " << r.net_low << " - " << r.net_high << "\n";
    std::cout << "cost per job-year: " << std::llround(r.low) << " - " << std::llround(r.high)
              << (r.lower_clamped ? "  (offsets exceed the lower gross bound)" : "") << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Working-time analysis toolkit: weighted elasticity aggregation, "
                 "hours-cap market models, policy cost arithmetic"};
    app.require_subcommand(1);

    std::string out_flag;
    app.add_option("--out", out_flag, "output directory (default ./out, or $HOURS_EFFECT_OUT)");

    auto* meta = app.add_subcommand("meta", "aggregate elasticities from a study ledger CSV");
    std::string meta_input;
    bool significant_only = false, cost_weighted_only = false;
    double z = 1.96;
    meta->add_option("--input", meta_input, "ledger CSV")->required();
    meta->add_flag("--significant-only", significant_only,
                   "keep statistically significant observations only");
    meta->add_flag("--cost-weighted-only", cost_weighted_only,
                   "keep cost-adjusted observations only");
    meta->add_option("--z", z, "critical value (default 1.96)");

    auto* sim = app.add_subcommand("simulate", "solve a labor-market model");
    std::string model, params_path, sweep_arg, regime_arg;
    double cap_value = 0.0;
    sim->add_option("--model", model, "monopsony | bargaining | competitive")->required();
    sim->add_option("--params", params_path, "parameter JSON")->required();
    auto* cap_opt = sim->add_option("--cap", cap_value, "single statutory cap");
    sim->add_option("--sweep", sweep_arg, "cap sweep lo:hi:n");
    sim->add_option("--regime", regime_arg, "fixed_monthly | proportional_hourly");

    auto* policy = app.add_subcommand("policy", "cost-per-job arithmetic from a ledger JSON");
    std::string ledger_path;
    bool apply_offsets = true;
    policy->add_option("--ledger", ledger_path, "cost ledger JSON")->required();
    policy->add_flag("--offsets,!--no-offsets", apply_offsets,
                     "apply fiscal offsets (default on)");

    CLI11_PARSE(app, argc, argv);
    const fs::path out_dir = resolve_out(out_flag);

    try {
        if (*meta) return cmd_meta(meta_input, significant_only, cost_weighted_only, z, out_dir);
        if (*sim)
            return cmd_simulate(model, params_path,
                                cap_opt->count() ? std::optional<double>(cap_value)
                                                 : std::nullopt,
                                sweep_arg, regime_arg, out_dir);
        if (*policy) return cmd_policy(ledger_path, apply_offsets, out_dir);
    } catch (const EmptySelection& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
