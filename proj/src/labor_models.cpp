#include "hours_effect/labor_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace hours_effect {

namespace {

void check_positive(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

void check_unit_interval(double v, const char* name) {
    if (!(std::isfinite(v) && v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

double pay_demand(double p, double A, double alpha, double pay, double eff_hours) {
    // price-taking firm, pay per worker: p*A*alpha*(L*E)^(alpha-1)*E = pay
    return std::pow(p * A * alpha * std::pow(eff_hours, alpha) / pay, 1.0 / (1.0 - alpha));
}

} // namespace

void MonopsonyParams::validate() const {
    check_positive(supply_scale, "supply_scale");
    check_positive(supply_elasticity, "supply_elasticity");
    check_positive(output_price, "output_price");
    check_positive(production_scale, "production_scale");
    if (!(std::isfinite(returns_exponent) && returns_exponent > 0.0 && returns_exponent < 1.0))
        throw std::invalid_argument("returns_exponent must lie in (0,1)");
    hours_grid.validate("hours_grid", 200);
    wage_grid.validate("wage_grid", 200);
    if (!(hours_grid.min > 0.0)) throw std::invalid_argument("hours_grid.min must be positive");
    if (!(wage_grid.min > 0.0)) throw std::invalid_argument("wage_grid.min must be positive");
    const double b_limit = 1.0 / (2.0 * hours_grid.max);
    if (!(std::isfinite(fatigue_coefficient) && fatigue_coefficient >= 0.0 &&
          fatigue_coefficient < b_limit))
        throw std::invalid_argument(
            "fatigue_coefficient must lie in [0, 1/(2*hours_grid.max)) so effective "
            "hours increase over the searched range");
}

double MonopsonyParams::labor_supply(double package) const {
    if (package <= 0.0) return 0.0;
    return supply_scale * std::pow(package, supply_elasticity);
}

double MonopsonyParams::output(double employment, double eff_hours) const {
    return production_scale * std::pow(employment * eff_hours, returns_exponent);
}

double MonopsonyParams::labor_demand(double pay, double eff_hours) const {
    return pay_demand(output_price, production_scale, returns_exponent, pay, eff_hours);
}

std::string_view to_string(WageRegime r) {
    switch (r) {
    case WageRegime::fixed_monthly: return "fixed_monthly";
    case WageRegime::proportional_hourly: return "proportional_hourly";
    case WageRegime::negotiated: return "negotiated";
    }
    return "?";
}

std::string_view to_string(MarketRegime r) {
    return r == MarketRegime::monopsony ? "monopsony" : "competitive";
}

namespace {

Equilibrium equilibrium_at(const MonopsonyParams& m, MarketRegime regime, double H, double w,
                           double objective) {
    Equilibrium eq;
    eq.regime = regime;
    eq.hours = H;
    eq.wage = w;
    const double E = m.effective_hours(H);
    eq.employment = m.labor_supply(m.package_value(w, H));
    eq.output = m.output(eq.employment, E);
    eq.profit = objective;
    return eq;
}

} // namespace

Equilibrium solve_monopsony(const MonopsonyParams& m) {
    m.validate();
    const auto& hg = m.hours_grid;
    const auto& wg = m.wage_grid;
    const double p = m.output_price, A = m.production_scale, alpha = m.returns_exponent;
    const auto best = argmax2d(hg.points, wg.points, [&](int i, int j) {
        const double H = hg.at(i), w = wg.at(j);
        const double E = m.effective_hours(H);
        const double L = m.labor_supply(m.package_value(w, H));
        return p * A * std::pow(L * E, alpha) - w * H * L;
    });
    return equilibrium_at(m, MarketRegime::monopsony, hg.at(best.i), wg.at(best.j), best.value);
}

Equilibrium solve_competitive(const MonopsonyParams& m) {
    m.validate();
    const auto& hg = m.hours_grid;
    const auto& wg = m.wage_grid;
    const double p = m.output_price, A = m.production_scale, alpha = m.returns_exponent;
    const double kappa = m.supply_elasticity / (m.supply_elasticity + 1.0);
    const double b = m.fatigue_coefficient;
    const auto best = argmax2d(hg.points, wg.points, [&](int i, int j) {
        const double H = hg.at(i), w = wg.at(j);
        const double E = m.effective_hours(H);
        const double u = std::max(m.package_value(w, H), 0.0);
        const double L = m.labor_supply(u);
        // output value less the social cost of the employed workers: each
        // worker bears the hours burden b*H^2 plus their reservation value,
        // which integrates to kappa*u per worker along the supply curve.
        return p * A * std::pow(L * E, alpha) - L * (b * H * H + kappa * u);
    });
    return equilibrium_at(m, MarketRegime::competitive, hg.at(best.i), wg.at(best.j), best.value);
}

CapResponse monopsony_cap_sweep(const MonopsonyParams& m, const GridSpec& caps) {
    return monopsony_cap_sweep(m, caps, solve_monopsony(m));
}

CapResponse monopsony_cap_sweep(const MonopsonyParams& m, const GridSpec& caps,
                                const Equilibrium& eq) {
    m.validate();
    caps.validate("caps", 2);
    if (caps.min < m.hours_grid.min - 1e-12 || caps.max > m.hours_grid.max + 1e-12)
        throw std::invalid_argument("caps must lie within the hours grid");

    const double pay = eq.wage * eq.hours; // frozen per-worker pay
    CapResponse resp;
    resp.wage_regime = WageRegime::fixed_monthly;
    resp.points = map_indexed<CapPoint>(caps.points, [&](int k) {
        const double cap = caps.at(k);
        CapPoint pt;
        pt.cap = cap;
        if (cap >= eq.hours) {
            pt.employment = eq.employment;
            pt.wage = eq.wage;
            pt.output = eq.output;
            return pt;
        }
        const double E = m.effective_hours(cap);
        const double supply = m.labor_supply(pay - m.fatigue_coefficient * cap * cap);
        const double demand = m.labor_demand(pay, E);
        pt.employment = std::min(supply, demand);
        pt.wage = pay / cap;
        pt.output = m.output(pt.employment, E);
        return pt;
    });
    return resp;
}

void BargainParams::validate() const {
    check_positive(base_wage, "base_wage");
    check_positive(reference_hours, "reference_hours");
    check_positive(output_price, "output_price");
    check_positive(production_scale, "production_scale");
    if (!(std::isfinite(returns_exponent) && returns_exponent > 0.0 && returns_exponent < 1.0))
        throw std::invalid_argument("returns_exponent must lie in (0,1)");
    hours_grid.validate("hours_grid", 200);
    if (!(hours_grid.min > 0.0)) throw std::invalid_argument("hours_grid.min must be positive");
    const double b_limit = 1.0 / (2.0 * hours_grid.max);
    if (!(std::isfinite(fatigue_coefficient) && fatigue_coefficient >= 0.0 &&
          fatigue_coefficient < b_limit))
        throw std::invalid_argument("fatigue_coefficient must lie in [0, 1/(2*hours_grid.max))");
    if (!(std::isfinite(eta1) && eta1 >= 0.0))
        throw std::invalid_argument("eta1 must be non-negative");
    // eta(H) >= 0 over the grid; with eta1 >= 0 the minimum sits at the left edge
    if (!(std::isfinite(eta0) && eta0 + eta1 * hours_grid.min >= 0.0))
        throw std::invalid_argument("eta(H) must be non-negative over the hours grid");
    check_unit_interval(market_power, "market_power");
    check_unit_interval(union_power, "union_power");
    if (bargained_hours) {
        if (!(*bargained_hours >= hours_grid.min && *bargained_hours <= hours_grid.max))
            throw std::invalid_argument("bargained_hours must lie within the hours grid");
    }
}

double BargainParams::wage_at(double hours) const {
    const double eta = eta0 + eta1 * hours;
    return base_wage * std::pow(hours / reference_hours, eta);
}

CapResponse bargaining_employment_curve(const BargainParams& bp) {
    bp.validate();
    const auto& hg = bp.hours_grid;
    CapResponse resp;
    resp.wage_regime = WageRegime::negotiated;
    resp.points = map_indexed<CapPoint>(hg.points, [&](int k) {
        const double H = hg.at(k);
        const double E = bp.effective_hours(H);
        const double w = bp.wage_at(H);
        if (!std::isfinite(w) || w <= 0.0)
            return CapPoint{H, std::numeric_limits<double>::quiet_NaN(), w, 0.0};
        CapPoint pt;
        pt.cap = H;
        pt.wage = w;
        pt.employment =
            pay_demand(bp.output_price, bp.production_scale, bp.returns_exponent, w, E);
        pt.output = bp.production_scale * std::pow(pt.employment * E, bp.returns_exponent);
        return pt;
    });
    for (const auto& pt : resp.points)
        if (!std::isfinite(pt.employment))
            throw std::domain_error("bargaining curve: non-finite wage or employment on grid");
    return resp;
}

std::pair<double, double> find_h_max(const CapResponse& curve) {
    if (curve.points.empty()) throw std::invalid_argument("find_h_max: empty curve");
    const CapPoint* best = &curve.points.front();
    for (const auto& pt : curve.points)
        if (pt.employment > best->employment) best = &pt; // first max wins: fewest hours
    return {best->cap, best->employment};
}

double firm_preferred_hours(const BargainParams& bp) {
    bp.validate();
    const auto& hg = bp.hours_grid;
    double best_h = hg.at(0);
    double best_v = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < hg.points; ++k) {
        const double H = hg.at(k);
        const double E = bp.effective_hours(H);
        const double w = bp.wage_at(H);
        const double L = pay_demand(bp.output_price, bp.production_scale, bp.returns_exponent, w, E);
        const double v = bp.output_price * bp.production_scale *
                             std::pow(L * E, bp.returns_exponent) -
                         w * L;
        if (v > best_v) {
            best_v = v;
            best_h = H;
        }
    }
    return best_h;
}

double bargained_hours_effective(const BargainParams& bp) {
    if (bp.bargained_hours) return *bp.bargained_hours;
    const auto curve = bargaining_employment_curve(bp);
    const double h_max = find_h_max(curve).first;
    const double h_pi = firm_preferred_hours(bp);
    return h_max + (1.0 - bp.market_power) * (1.0 - bp.union_power) * (h_pi - h_max);
}

std::vector<ComparativeStaticPoint> comparative_static_hmax(const BargainParams& base,
                                                            std::string_view parameter,
                                                            std::span<const double> values) {
    double BargainParams::* field = nullptr;
    if (parameter == "market_power") field = &BargainParams::market_power;
    else if (parameter == "union_power") field = &BargainParams::union_power;
    else if (parameter == "eta1") field = &BargainParams::eta1;
    else
        throw std::invalid_argument("comparative_static_hmax: unknown parameter \"" +
                                    std::string(parameter) + "\"");

    std::vector<ComparativeStaticPoint> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        BargainParams bp = base;
        bp.*field = values[k];
        bp.bargained_hours.reset(); // the sweep studies the bargained outcome
        const auto curve = bargaining_employment_curve(bp);
        const double h_max = find_h_max(curve).first;
        const double h_b = bargained_hours_effective(bp);
        out[k] = {values[k], h_max, h_b - h_max};
    }
    return out;
}

CapPoint competitive_cap_scenario(const MonopsonyParams& m, double cap, WageRegime regime) {
    return competitive_cap_scenario(m, cap, regime, solve_competitive(m));
}

CapPoint competitive_cap_scenario(const MonopsonyParams& m, double cap, WageRegime regime,
                                  const Equilibrium& eq) {
    m.validate();
    if (regime == WageRegime::negotiated)
        throw std::invalid_argument("competitive_cap_scenario: regime must be fixed_monthly "
                                    "or proportional_hourly");
    if (!(cap >= m.hours_grid.min && cap <= m.hours_grid.max))
        throw std::invalid_argument("cap must lie within the hours grid");

    CapPoint pt;
    if (cap >= eq.hours) {
        pt = {cap, eq.employment, eq.wage, eq.output};
        return pt;
    }
    const double E = m.effective_hours(cap);
    pt.cap = cap;
    if (regime == WageRegime::fixed_monthly) {
        const double pay = eq.wage * eq.hours; // monthly pay preserved, hourly cost rises
        pt.employment = m.labor_demand(pay, E);
        pt.wage = pay / cap;
    } else {
        pt.employment = m.labor_demand(eq.wage * cap, E); // hourly cost unchanged
        pt.wage = eq.wage;
    }
    pt.output = m.output(pt.employment, E);
    return pt;
}

std::vector<std::string> figure_violations_monopsony(const MonopsonyParams& params,
                                                     const Equilibrium& mono,
                                                     const Equilibrium& comp,
                                                     const CapResponse& sweep) {
    std::vector<std::string> out;
    if (!(mono.hours > comp.hours)) out.push_back("monopsony hours do not exceed competitive hours");
    if (!(mono.employment < comp.employment))
        out.push_back("monopsony employment is not below competitive employment");
    if (!(mono.wage < comp.wage)) out.push_back("monopsony wage is not below competitive wage");
    if (sweep.points.size() < 2) return out;

    std::size_t peak = 0;
    for (std::size_t k = 1; k < sweep.points.size(); ++k)
        if (sweep.points[k].employment > sweep.points[peak].employment) peak = k;
    const double step = params.hours_grid.step();
    if (std::abs(sweep.points[peak].cap - comp.hours) > step + 1e-12)
        out.push_back("cap-sweep employment does not peak at the competitive hours");
    for (std::size_t k = 0; k < peak; ++k)
        if (!(sweep.points[k].employment < sweep.points[peak].employment)) {
            out.push_back("employment under deep caps is not strictly below the peak");
            break;
        }
    for (std::size_t k = peak; k + 1 < sweep.points.size(); ++k) {
        const bool above_hm = sweep.points[k].cap >= mono.hours;
        const double next = sweep.points[k + 1].employment;
        const double cur = sweep.points[k].employment;
        if (above_hm ? next != cur : !(next <= cur + 1e-12)) {
            out.push_back("employment is not non-increasing as the cap rises from the peak");
            break;
        }
    }
    return out;
}

std::vector<std::string> figure_violations_bargaining(const CapResponse& curve) {
    std::vector<std::string> out;
    const auto& p = curve.points;
    if (p.size() < 3) return out;
    int maxima = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double left = k > 0 ? p[k - 1].employment : -std::numeric_limits<double>::infinity();
        const double right = k + 1 < p.size() ? p[k + 1].employment
                                              : -std::numeric_limits<double>::infinity();
        if (p[k].employment > left && p[k].employment > right) ++maxima;
    }
    if (maxima != 1)
        out.push_back("bargaining employment curve has " + std::to_string(maxima) +
                      " local maxima, expected exactly one");
    return out;
}

namespace {

GridSpec grid_from_json(const nlohmann::json& j, const char* name) {
    if (!j.contains(name)) throw std::invalid_argument(std::string(name) + " missing");
    const auto& g = j.at(name);
    GridSpec spec;
    spec.min = g.at("min").get<double>();
    spec.max = g.at("max").get<double>();
    spec.points = g.at("points").get<int>();
    return spec;
}

double get_num(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j.at(name).is_number())
        throw std::invalid_argument(std::string("parameter \"") + name +
                                    "\" missing or non-numeric");
    return j.at(name).get<double>();
}

} // namespace

MonopsonyParams monopsony_params_from_json(const nlohmann::json& j) {
    MonopsonyParams m;
    m.supply_scale = get_num(j, "supply_scale");
    m.supply_elasticity = get_num(j, "supply_elasticity");
    m.output_price = get_num(j, "output_price");
    m.production_scale = get_num(j, "production_scale");
    m.returns_exponent = get_num(j, "returns_exponent");
    m.fatigue_coefficient = get_num(j, "fatigue_coefficient");
    m.hours_grid = grid_from_json(j, "hours_grid");
    m.wage_grid = grid_from_json(j, "wage_grid");
    m.validate();
    return m;
}

BargainParams bargain_params_from_json(const nlohmann::json& j) {
    BargainParams b;
    if (j.contains("bargained_hours") && !j.at("bargained_hours").is_null())
        b.bargained_hours = j.at("bargained_hours").get<double>();
    b.base_wage = get_num(j, "base_wage");
    b.reference_hours = get_num(j, "reference_hours");
    b.eta0 = get_num(j, "eta0");
    b.eta1 = get_num(j, "eta1");
    b.market_power = get_num(j, "market_power");
    b.union_power = get_num(j, "union_power");
    b.output_price = get_num(j, "output_price");
    b.production_scale = get_num(j, "production_scale");
    b.returns_exponent = get_num(j, "returns_exponent");
    b.fatigue_coefficient = get_num(j, "fatigue_coefficient");
    b.hours_grid = grid_from_json(j, "hours_grid");
    b.validate();
    return b;
}

std::string cap_response_csv(const CapResponse& resp) {
    std::string out = "cap,employment,wage,output\n";
    char buf[160];
    for (const auto& pt : resp.points) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g\n", pt.cap, pt.employment,
                      pt.wage, pt.output);
        out += buf;
    }
    return out;
}

} // namespace hours_effect
