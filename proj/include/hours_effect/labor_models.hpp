#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hours_effect/grid_search.hpp"

namespace hours_effect {

/// Stylized firm-level labor market with isoelastic worker supply over the
/// per-job package value u = w*H - b*H^2 and output A*(L*E(H))^alpha with
/// effective hours E(H) = H - b*H^2.
struct MonopsonyParams {
    double supply_scale = 1.0;      ///< a, workers per unit package value
    double supply_elasticity = 2.4; ///< eps
    double output_price = 1.0;      ///< p
    double production_scale = 5.0;  ///< A
    double returns_exponent = 0.5;  ///< alpha in (0,1)
    double fatigue_coefficient = 0.02; ///< b; E increasing requires b < 1/(2*H_max)
    GridSpec hours_grid{4.0, 14.0, 401};
    GridSpec wage_grid{0.1, 5.0, 4001};

    void validate() const;

    double effective_hours(double hours) const {
        return hours - fatigue_coefficient * hours * hours;
    }
    /// Package value the marginal worker compares against their reservation.
    double package_value(double wage, double hours) const {
        return wage * hours - fatigue_coefficient * hours * hours;
    }
    double labor_supply(double package) const;
    double output(double employment, double eff_hours) const;
    /// Labor demand of a price-taking firm paying `pay` per worker.
    double labor_demand(double pay, double eff_hours) const;
};

enum class MarketRegime { monopsony, competitive };

struct Equilibrium {
    MarketRegime regime = MarketRegime::monopsony;
    double hours = 0.0;
    double wage = 0.0; ///< hourly
    double employment = 0.0;
    double output = 0.0;
    double profit = 0.0; ///< for the competitive solve this is the surplus objective
};

enum class WageRegime { fixed_monthly, proportional_hourly, negotiated };

std::string_view to_string(WageRegime r);
std::string_view to_string(MarketRegime r);

struct CapPoint {
    double cap = 0.0;
    double employment = 0.0;
    double wage = 0.0; ///< hourly for monopsony/competitive rows, per-worker pay for bargaining
    double output = 0.0;
};

struct CapResponse {
    WageRegime wage_regime = WageRegime::fixed_monthly;
    std::vector<CapPoint> points; ///< caps strictly increasing
};

/// Profit-maximizing (hours, wage) over the declared grids; employment on the
/// supply curve. Ties break toward fewer hours, then lower wage.
Equilibrium solve_monopsony(const MonopsonyParams& params);

/// Surplus-maximizing allocation over the same grids, with workers on the
/// supply curve; at the optimum per-worker pay equals the marginal revenue
/// product of labor (zero margin on the hiring decision).
Equilibrium solve_competitive(const MonopsonyParams& params);

/// Employment response to statutory caps under the pay-preserving regime:
/// per-worker pay stays at the uncapped monopsony level and employment is
/// min(supply, demand) at the capped hours. Caps at or above the monopsony
/// hours reproduce the uncapped equilibrium exactly.
CapResponse monopsony_cap_sweep(const MonopsonyParams& params, const GridSpec& caps);

/// Same sweep against an already-solved uncapped equilibrium.
CapResponse monopsony_cap_sweep(const MonopsonyParams& params, const GridSpec& caps,
                                const Equilibrium& uncapped);

/// Collectively bargained market: per-worker pay follows the negotiated
/// schedule w(H) = w0 * (H/H0)^(eta0 + eta1*H).
struct BargainParams {
    std::optional<double> bargained_hours; ///< explicit H_b; derived from the powers when absent
    double base_wage = 1.0;       ///< w0
    double reference_hours = 90.0; ///< H0, schedule anchor
    double eta0 = 0.5;
    double eta1 = 0.01; ///< eta1 >= 0: pay responds more strongly at long hours
    double market_power = 0.3; ///< mu in [0,1], firm's market position
    double union_power = 0.4;  ///< beta in [0,1]
    double output_price = 1.0;
    double production_scale = 5.0;
    double returns_exponent = 0.5;
    double fatigue_coefficient = 0.006;
    GridSpec hours_grid{20.0, 60.0, 401};

    void validate() const;
    double wage_at(double hours) const; ///< negotiated per-worker pay
    double effective_hours(double hours) const {
        return hours - fatigue_coefficient * hours * hours;
    }
};

/// Employment from labor demand at the negotiated pay, over the full hours grid.
CapResponse bargaining_employment_curve(const BargainParams& params);

/// Grid point of maximum employment; ties break toward fewer hours.
std::pair<double, double> find_h_max(const CapResponse& curve);

/// Hours the firm would pick under the schedule if it bargained alone.
double firm_preferred_hours(const BargainParams& params);

/// Bargained hours: the explicit value when set, otherwise
/// H_max + (1-mu)*(1-beta)*(H_pi - H_max), the tug between the union target
/// H_max and the firm's preferred hours H_pi.
double bargained_hours_effective(const BargainParams& params);

struct ComparativeStaticPoint {
    double value = 0.0;
    double h_max = 0.0;
    double gap = 0.0; ///< H_b - H_max, with H_b re-derived from the powers
};

/// Re-solve find_h_max while varying one of market_power, union_power, eta1.
std::vector<ComparativeStaticPoint> comparative_static_hmax(const BargainParams& base,
                                                            std::string_view parameter,
                                                            std::span<const double> values);

/// Competitive benchmark under a cap: employment from labor demand at the
/// regime's pay rule (fixed_monthly freezes per-worker pay at the uncapped
/// level; proportional_hourly freezes the hourly wage).
CapPoint competitive_cap_scenario(const MonopsonyParams& params, double cap, WageRegime regime);

/// Same scenario against an already-solved uncapped competitive equilibrium.
CapPoint competitive_cap_scenario(const MonopsonyParams& params, double cap, WageRegime regime,
                                  const Equilibrium& uncapped);

/// Figure-consistency checks on a solved monopsony scenario; empty when all hold.
std::vector<std::string> figure_violations_monopsony(const MonopsonyParams& params,
                                                     const Equilibrium& monopsony,
                                                     const Equilibrium& competitive,
                                                     const CapResponse& sweep);

/// Single-peakedness of the bargaining employment curve; empty when it holds.
std::vector<std::string> figure_violations_bargaining(const CapResponse& curve);

MonopsonyParams monopsony_params_from_json(const nlohmann::json& j);
BargainParams bargain_params_from_json(const nlohmann::json& j);

/// CSV with header cap,employment,wage,output.
std::string cap_response_csv(const CapResponse& response);

} // namespace hours_effect
