#include "sqg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sqg {

namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, with series near 0.
double phi1(double z) {
    if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
    return std::expm1(z) / z;
}

double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0;
    return (std::expm1(z) - z) / (z * z);
}

/// Per-mode coefficients of the exponential integrator for a fixed step.
struct EtdTables {
    std::vector<double> decay;    // e^{-mu dt}
    std::vector<double> phi1_dt;  // dt phi1(-mu dt)
    std::vector<double> phi2_dt;  // dt phi2(-mu dt)
};

EtdTables build_tables(const GridSpec& grid, double alpha, double dt, bool second_order) {
    const int n = grid.n_points;
    EtdTables t;
    t.decay.resize(grid.size());
    t.phi1_dt.resize(grid.size());
    if (second_order) t.phi2_dt.resize(grid.size());
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag2 = kx * kx + ky * ky;
            const double mu = (mag2 == 0.0) ? 0.0 : std::pow(mag2, alpha);
            const double z = -mu * dt;
            const std::size_t idx = static_cast<std::size_t>(ix) * n + iy;
            t.decay[idx] = std::exp(z);
            t.phi1_dt[idx] = dt * phi1(z);
            if (second_order) t.phi2_dt[idx] = dt * phi2(z);
        }
    }
    return t;
}

SpectralField step_core(const SpectralField& theta, const SimConfig& config,
                        const EtdTables& tables) {
    const std::size_t total = theta.grid.size();
    SpectralField next(theta.grid);

    if (!config.include_nonlinear) {
        for (std::size_t i = 0; i < total; ++i) next.coeff[i] = tables.decay[i] * theta.coeff[i];
    } else if (config.integrator == Integrator::ETD1) {
        SpectralField flux = nonlinear_term(theta, config.dealias);  // div(u theta)
        for (std::size_t i = 0; i < total; ++i)
            next.coeff[i] = tables.decay[i] * theta.coeff[i] - tables.phi1_dt[i] * flux.coeff[i];
    } else {
        SpectralField flux = nonlinear_term(theta, config.dealias);
        SpectralField predictor(theta.grid);
        for (std::size_t i = 0; i < total; ++i)
            predictor.coeff[i] =
                tables.decay[i] * theta.coeff[i] - tables.phi1_dt[i] * flux.coeff[i];
        SpectralField flux_pred = nonlinear_term(predictor, config.dealias);
        for (std::size_t i = 0; i < total; ++i)
            next.coeff[i] = predictor.coeff[i] -
                            tables.phi2_dt[i] * (flux_pred.coeff[i] - flux.coeff[i]);
    }

    if (!all_finite(next)) throw InstabilityError("non-finite coefficients after ETD step");
    return next;
}

}  // namespace

void SimConfig::validate() const {
    if (!(alpha > 0.5) || !(alpha <= 1.0))
        throw std::invalid_argument("SimConfig: alpha must lie in (0.5, 1]");
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("SimConfig: t_end must be positive");
    if (!(dt < t_end)) throw std::invalid_argument("SimConfig: dt must be smaller than t_end");
    double prev = -1.0;
    for (double t : record_times) {
        if (t < 0.0 || t > t_end)
            throw std::invalid_argument("SimConfig: record_times must lie within [0, t_end]");
        if (t <= prev)
            throw std::invalid_argument("SimConfig: record_times must be strictly increasing");
        prev = t;
    }
}

SpectralField linear_propagate(const SpectralField& theta, double alpha, double dt) {
    if (dt < 0.0) throw std::invalid_argument("linear_propagate: dt must be >= 0");
    const GridSpec& grid = theta.grid;
    const int n = grid.n_points;
    SpectralField out(grid);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag2 = kx * kx + ky * ky;
            const double mu = (mag2 == 0.0) ? 0.0 : std::pow(mag2, alpha);
            out.at(ix, iy) = std::exp(-mu * dt) * theta.at(ix, iy);
        }
    }
    return out;
}

SpectralField step(const SpectralField& theta, const SimConfig& config) {
    const bool second = config.integrator == Integrator::ETD2;
    EtdTables tables = build_tables(theta.grid, config.alpha, config.dt, second);
    return step_core(theta, config, tables);
}

Trajectory simulate(const SpectralField& theta0, const SimConfig& config) {
    config.validate();

    Trajectory traj;
    traj.config = config;

    SpectralField theta = theta0;
    if (config.dealias == Dealias::two_thirds) dealias_inplace(theta);

    const bool second = config.integrator == Integrator::ETD2;
    EtdTables main_tables = build_tables(theta.grid, config.alpha, config.dt, second);

    const double eps = 1e-12 * config.t_end;
    std::size_t next_record = 0;
    auto maybe_record = [&](double t) {
        while (next_record < config.record_times.size() &&
               std::abs(config.record_times[next_record] - t) <= eps) {
            traj.times.push_back(config.record_times[next_record]);
            traj.samples.push_back(theta);
            ++next_record;
        }
    };

    maybe_record(0.0);

    const double L2 = theta.grid.box_length * theta.grid.box_length;
    auto energy_sq = [&](const SpectralField& f) {
        double s = 0.0;
        for (const complex& c : f.coeff) s += std::norm(c);
        return L2 * s;
    };

    traj.energy.initial_energy_sq = energy_sq(theta);
    double e_prev = traj.energy.initial_energy_sq;
    double d_prev = 2.0 * dissipation_norm_sq(theta, config.alpha);

    double t = 0.0;
    while (t < config.t_end - eps) {
        double stop = std::min(t + config.dt, config.t_end);
        if (next_record < config.record_times.size())
            stop = std::min(stop, config.record_times[next_record]);
        const double h = stop - t;
        try {
            if (std::abs(h - config.dt) <= 1e-15 * config.dt) {
                theta = step_core(theta, config, main_tables);
            } else {
                SimConfig partial = config;
                partial.dt = h;
                EtdTables tables = build_tables(theta.grid, config.alpha, h, second);
                theta = step_core(theta, partial, tables);
            }
        } catch (const InstabilityError&) {
            throw InstabilityError("instability at t = " + std::to_string(stop));
        }

        const double e_now = energy_sq(theta);
        const double d_now = 2.0 * dissipation_norm_sq(theta, config.alpha);
        traj.energy.dissipation_cum += 0.5 * (d_prev + d_now) * h;
        traj.energy.dissipation_cum_left += d_prev * h;
        if (e_now > e_prev) {
            ++traj.energy.l2_increase_steps;
            traj.energy.max_l2_sq_step_increase =
                std::max(traj.energy.max_l2_sq_step_increase, e_now - e_prev);
        }
        e_prev = e_now;
        d_prev = d_now;

        t = stop;
        maybe_record(t);
    }
    traj.energy.final_energy_sq = e_prev;
    return traj;
}

NormSeries norm_series(const Trajectory& traj) {
    NormSeries ns;
    ns.times = traj.times;
    double cum = 0.0;
    double prev_diss = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const SpectralField& f = traj.samples[i];
        ns.l2.push_back(lp_norm(f, 2.0));
        ns.l4.push_back(lp_norm(f, 4.0));
        ns.linf.push_back(lp_norm(f, std::numeric_limits<double>::infinity()));
        const double diss = 2.0 * dissipation_norm_sq(f, traj.config.alpha);
        if (i > 0) cum += 0.5 * (prev_diss + diss) * (ns.times[i] - ns.times[i - 1]);
        prev_diss = diss;
        ns.dissipation_cum.push_back(cum);
    }
    return ns;
}

bool max_principle_holds(const NormSeries& ns, double rel_slack) {
    auto ok = [&](const std::vector<double>& s) {
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] > s[i - 1] * (1.0 + rel_slack)) return false;
        return true;
    };
    return ok(ns.l2) && ok(ns.l4) && ok(ns.linf);
}

PicardResult picard_iterate(const SpectralField& theta0, const SimConfig& config, int n_iters,
                            double q) {
    config.validate();
    if (n_iters < 1) throw std::invalid_argument("picard_iterate: n_iters must be >= 1");
    const double m = config.critical_m();
    if (q < m - 1e-12)
        throw std::invalid_argument("picard_iterate: q must be >= m = 2/(2 alpha - 1)");
    const std::vector<double>& grid_t = config.record_times;
    if (grid_t.size() < 2 || grid_t.front() != 0.0)
        throw std::invalid_argument(
            "picard_iterate: record_times must start at 0 and contain at least two nodes");

    SpectralField base = theta0;
    if (config.dealias == Dealias::two_thirds) dealias_inplace(base);

    const GridSpec& grid = base.grid;
    const int n = grid.n_points;
    const std::size_t modes = grid.size();
    const std::size_t M = grid_t.size();

    std::vector<double> mu(modes);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = grid.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = grid.wavenumber(iy);
            const double mag2 = kx * kx + ky * ky;
            mu[static_cast<std::size_t>(ix) * n + iy] = (mag2 == 0.0) ? 0.0 : std::pow(mag2, config.alpha);
        }
    }

    // Linear flow K_a(t) theta0, reused by every iterate.
    std::vector<SpectralField> linear_flow;
    linear_flow.reserve(M);
    for (double t : grid_t) linear_flow.push_back(linear_propagate(base, config.alpha, t));

    const double t_min = 10.0 * config.dt;
    const double k_weight_exp = (1.0 / config.alpha) * (1.0 / m - 1.0 / q);
    const double kp_weight_exp = 1.0 / (2.0 * config.alpha) + k_weight_exp;

    auto make_record = [&](int iter_n, const std::vector<SpectralField>& flow,
                           const std::vector<SpectralField>* prev) {
        KatoIterateRecord rec;
        rec.n = iter_n;
        rec.q = q;
        for (std::size_t j = 0; j < M; ++j) {
            const double t = grid_t[j];
            if (t < t_min) continue;
            rec.K_n = std::max(rec.K_n, std::pow(t, k_weight_exp) * lp_norm(flow[j], q));
            rec.Kp_n =
                std::max(rec.Kp_n, std::pow(t, kp_weight_exp) * gradient_lq_norm(flow[j], q));
        }
        if (prev) {
            for (std::size_t j = 0; j < M; ++j) {
                SpectralField diff = flow[j];
                for (std::size_t i = 0; i < modes; ++i) diff.coeff[i] -= (*prev)[j].coeff[i];
                rec.sup_l2_diff_prev = std::max(rec.sup_l2_diff_prev, l2_norm_spectral(diff));
            }
        }
        return rec;
    };

    PicardResult result;
    result.iterates.push_back({grid_t, linear_flow, config, {}});
    result.records.push_back(make_record(1, linear_flow, nullptr));

    int consecutive_growth = 0;
    for (int iter = 2; iter <= n_iters; ++iter) {
        const std::vector<SpectralField>& prev = result.iterates.back().samples;

        std::vector<SpectralField> flux;
        flux.reserve(M);
        for (const SpectralField& f : prev) flux.push_back(nonlinear_term(f, config.dealias));

        std::vector<SpectralField> next;
        next.reserve(M);
        next.push_back(base);
        for (std::size_t j = 1; j < M; ++j) {
            SpectralField acc = linear_flow[j];
            const double tj = grid_t[j];
            for (std::size_t i = 0; i + 1 < j; ++i) {
                // Trapezoid in the flux with the exact kernel weight.
                const double a = grid_t[i], b = grid_t[i + 1];
                for (std::size_t mode_i = 0; mode_i < modes; ++mode_i) {
                    const double m_mu = mu[mode_i];
                    const double w = (m_mu == 0.0)
                                         ? (b - a)
                                         : (std::exp(-m_mu * (tj - b)) - std::exp(-m_mu * (tj - a))) / m_mu;
                    acc.coeff[mode_i] -=
                        w * 0.5 * (flux[i].coeff[mode_i] + flux[i + 1].coeff[mode_i]);
                }
            }
            {
                // Final panel, left endpoint.
                const double a = grid_t[j - 1];
                for (std::size_t mode_i = 0; mode_i < modes; ++mode_i) {
                    const double m_mu = mu[mode_i];
                    const double w = (m_mu == 0.0) ? (tj - a)
                                                   : (1.0 - std::exp(-m_mu * (tj - a))) / m_mu;
                    acc.coeff[mode_i] -= w * flux[j - 1].coeff[mode_i];
                }
            }
            if (!all_finite(acc))
                throw InstabilityError("picard_iterate: non-finite iterate " +
                                       std::to_string(iter) + " at t = " + std::to_string(tj));
            next.push_back(std::move(acc));
        }

        KatoIterateRecord rec = make_record(iter, next, &prev);
        result.iterates.push_back({grid_t, std::move(next), config, {}});
        result.records.push_back(rec);

        const std::size_t r = result.records.size();
        if (result.records[r - 1].K_n > result.records[r - 2].K_n * (1.0 + 1e-9))
            ++consecutive_growth;
        else
            consecutive_growth = 0;
        if (consecutive_growth >= 3)
            throw std::runtime_error("picard_iterate: K_n growing across 3 consecutive iterates "
                                     "(diverging at iterate " +
                                     std::to_string(iter) + ")");
    }
    return result;
}

bool kato_recursion_check(double K1, double c, int n) {
    if (!(c > 0.0)) throw std::invalid_argument("kato_recursion_check: c must be positive");
    if (n < 1) throw std::invalid_argument("kato_recursion_check: n must be >= 1");
    const double bound = 1.0 / (2.0 * c);
    double K = K1;
    for (int j = 1; j <= n; ++j) {
        if (K > bound) return false;
        K = K1 + c * K * K;
    }
    return true;
}

}  // namespace sqg
