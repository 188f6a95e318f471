#include "reproduce.hpp"

#include <cmath>
#include <sstream>

#include "cachenet/catalog.hpp"
#include "cachenet/optimizer.hpp"
#include "experiment.hpp"

namespace cachenet::cli {

namespace {

// Pass/fail bookkeeping for the sidecar report.
struct Reporter {
    std::ostream& out;
    bool ok = true;

    void line(const std::string& text) { out << text << '\n'; }

    void record(const std::string& label, bool pass, const std::string& detail) {
        if (!pass) ok = false;
        out << "  [" << (pass ? "PASS" : "FAIL") << "] " << label << ": " << detail << '\n';
    }

    void near(const std::string& label, double got, double ref, double tol) {
        double delta = std::abs(got - ref);
        std::ostringstream detail;
        detail.precision(6);
        detail << "ref=" << ref << " got=" << got << " |delta|=" << delta << " tol=" << tol;
        record(label, delta <= tol, detail.str());
    }

    void exact(const std::string& label, double got, double ref) {
        near(label, got, ref, 1e-9);
    }

    void require(const std::string& label, bool condition) {
        record(label, condition, condition ? "holds" : "violated");
    }
};

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

bool constant_within(const std::vector<double>& v, double tol) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i] - v[0]) > tol) return false;
    return true;
}

// One point of a cache-capacity sweep with its derived probabilities.
struct CachePoint {
    std::size_t m_u;
    double q_u;
    double p_h;
};

// The capacity values tabulated in the reference scenario, smallest storage
// (largest q_U) last so the derived q_U column comes out ascending.
const std::vector<std::size_t> kCapacitySweep = {2000, 1600, 800, 400, 200, 100};

std::vector<CachePoint> catalog_sweep(const ExperimentSpec& spec,
                                      const std::vector<std::size_t>& capacities) {
    if (!spec.catalog)
        throw ConfigError("this reproduce target needs a [catalog] section in the config");
    ZipfCatalog catalog(spec.catalog->library_size, spec.catalog->zipf_shape);
    std::vector<CachePoint> points;
    points.reserve(capacities.size());
    for (std::size_t m_u : capacities) {
        CacheConfig cache{m_u, spec.catalog->helper_capacity, spec.catalog->policy};
        points.push_back({m_u, external_request_prob(catalog, cache),
                          helper_hit_prob(catalog, cache)});
    }
    return points;
}

OptimizerInputs inputs_from(const ScenarioParams& params) {
    return {params.arrival_rate, params.external_request_prob, params.helper_hit_prob,
            params.dc_availability, params.links};
}

// --- individual targets -----------------------------------------------------

void table2(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4};
    const std::vector<double> ref_q_s = {0.209639, 0.41927, 0.628917, 0.838556};
    const std::vector<double> weights = {0.25, 0.5, 0.75};

    ScenarioParams base = spec.resolve_params();
    csv << "lambda,q_s_star,q_c_star,ref_q_s_star,delta\n";
    rep.line("Optimal helper transmission probability vs arrival rate (stable queue):");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        ScenarioParams p = base;
        p.arrival_rate = lambdas[i];
        OptimizationResult r = optimize_stable(inputs_from(p), 0.5);
        csv << csv_number(lambdas[i]) << ',' << csv_number(r.best_q_s) << ','
            << csv_number(r.best_q_c) << ',' << csv_number(ref_q_s[i]) << ','
            << csv_number(r.best_q_s - ref_q_s[i]) << '\n';
        rep.near("q_s_star(lambda=" + csv_number(lambdas[i]) + ")", r.best_q_s, ref_q_s[i],
                 0.005);
        for (double w : weights) {
            OptimizationResult rw = optimize_stable(inputs_from(p), w);
            rep.exact("q_c_star(lambda=" + csv_number(lambdas[i]) + ",w=" + csv_number(w) + ")",
                      rw.best_q_c, 1.0);
        }
    }
}

void table3(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> weights = {0.25, 0.5, 0.75};
    const std::vector<double> ref_value = {0.496229, 0.350238, 0.413624};
    const std::vector<double> ref_q_s = {0, 1, 1};
    const std::vector<double> ref_q_c = {1, 0, 0};

    ScenarioParams base = spec.resolve_params();
    csv << "w,max_value,q_s_star,q_c_star,ref_value,delta\n";
    rep.line("Maximum weighted sum throughput, unstable queue:");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        OptimizationResult r = optimize_unstable(inputs_from(base), weights[i]);
        csv << csv_number(weights[i]) << ',' << csv_number(r.best_value) << ','
            << csv_number(r.best_q_s) << ',' << csv_number(r.best_q_c) << ','
            << csv_number(ref_value[i]) << ',' << csv_number(r.best_value - ref_value[i])
            << '\n';
        std::string tag = "(w=" + csv_number(weights[i]) + ")";
        rep.near("max" + tag, r.best_value, ref_value[i], 0.005);
        rep.exact("q_s_star" + tag, r.best_q_s, ref_q_s[i]);
        rep.exact("q_c_star" + tag, r.best_q_c, ref_q_c[i]);
    }
}

void table4(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<std::size_t> m_us = {100, 200, 400, 800, 1600, 2000};
    const std::vector<double> ref_q_u = {0.91, 0.86, 0.81, 0.72, 0.6, 0.56};
    const std::vector<double> ref_p_h = {0.35, 0.31, 0.25, 0.17, 0.05, 0.0};

    auto points = catalog_sweep(spec, m_us);
    csv << "m_u,q_u,p_h,ref_q_u,ref_p_h\n";
    rep.line("Derived request/hit probabilities vs user cache capacity:");
    for (std::size_t i = 0; i < points.size(); ++i) {
        csv << points[i].m_u << ',' << csv_number(points[i].q_u) << ','
            << csv_number(points[i].p_h) << ',' << csv_number(ref_q_u[i]) << ','
            << csv_number(ref_p_h[i]) << '\n';
        std::string tag = "(m_u=" + std::to_string(points[i].m_u) + ")";
        rep.near("q_u" + tag, points[i].q_u, ref_q_u[i], 0.005);
        rep.near("p_h" + tag, points[i].p_h, ref_p_h[i], 0.005);
    }
}

void table5(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> ref_q_s = {0.623, 0.649, 0.723, 0.787, 0.839, 0.88};
    const std::vector<double> ref_q_c = {0, 1, 1, 1, 1, 1};

    ScenarioParams base = spec.resolve_params();
    base.arrival_rate = 0.4;
    auto points = catalog_sweep(spec, kCapacitySweep);
    csv << "q_u,p_h,q_s_star,q_c_star,max_value,ref_q_s_star,ref_q_c_star\n";
    rep.line("Stable-regime optima vs q_U (lambda=0.4):");
    for (std::size_t i = 0; i < points.size(); ++i) {
        ScenarioParams p = base;
        p.external_request_prob = points[i].q_u;
        p.helper_hit_prob = points[i].p_h;
        OptimizationResult r = optimize_stable(inputs_from(p), spec.weight);
        csv << csv_number(points[i].q_u) << ',' << csv_number(points[i].p_h) << ','
            << csv_number(r.best_q_s) << ',' << csv_number(r.best_q_c) << ','
            << csv_number(r.best_value) << ',' << csv_number(ref_q_s[i]) << ','
            << csv_number(ref_q_c[i]) << '\n';
        std::string tag = "(q_u=" + csv_number(points[i].q_u) + ")";
        rep.near("q_s_star" + tag, r.best_q_s, ref_q_s[i], 0.005);
        rep.exact("q_c_star" + tag, r.best_q_c, ref_q_c[i]);
    }
}

void unstable_capacity_table(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep,
                             double weight, const std::vector<double>& ref_q_s,
                             const std::vector<double>& ref_q_c) {
    ScenarioParams base = spec.resolve_params();
    auto points = catalog_sweep(spec, kCapacitySweep);
    csv << "q_u,p_h,q_s_star,q_c_star,max_value,ref_q_s_star,ref_q_c_star\n";
    rep.line("Unstable-regime optima vs q_U (w=" + csv_number(weight) + "):");
    for (std::size_t i = 0; i < points.size(); ++i) {
        ScenarioParams p = base;
        p.external_request_prob = points[i].q_u;
        p.helper_hit_prob = points[i].p_h;
        OptimizationResult r = optimize_unstable(inputs_from(p), weight);
        csv << csv_number(points[i].q_u) << ',' << csv_number(points[i].p_h) << ','
            << csv_number(r.best_q_s) << ',' << csv_number(r.best_q_c) << ','
            << csv_number(r.best_value) << ',' << csv_number(ref_q_s[i]) << ','
            << csv_number(ref_q_c[i]) << '\n';
        std::string tag = "(q_u=" + csv_number(points[i].q_u) + ")";
        rep.exact("q_s_star" + tag, r.best_q_s, ref_q_s[i]);
        rep.exact("q_c_star" + tag, r.best_q_c, ref_q_c[i]);
    }
}

void fig2(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    if (!spec.catalog)
        throw ConfigError("this reproduce target needs a [catalog] section in the config");
    const std::vector<std::size_t> m_us = {0, 100, 200, 400, 800, 1600, 2000};
    ZipfCatalog catalog(spec.catalog->library_size, spec.catalog->zipf_shape);

    std::vector<double> q_u, mpc, cmpc;
    csv << "m_u,q_u,p_h_mpc,p_h_cmpc\n";
    for (std::size_t m_u : m_us) {
        CacheConfig as_mpc{m_u, spec.catalog->helper_capacity, CachePolicy::MPC};
        CacheConfig as_cmpc{m_u, spec.catalog->helper_capacity, CachePolicy::CMPC};
        q_u.push_back(external_request_prob(catalog, as_mpc));
        mpc.push_back(helper_hit_prob(catalog, as_mpc));
        cmpc.push_back(helper_hit_prob(catalog, as_cmpc));
        csv << m_u << ',' << csv_number(q_u.back()) << ',' << csv_number(mpc.back()) << ','
            << csv_number(cmpc.back()) << '\n';
    }
    rep.line("Cache hit/request probabilities vs user capacity, both policies:");
    rep.require("q_u strictly decreasing in m_u", strictly_decreasing(q_u));
    rep.require("p_h (MPC) strictly decreasing in m_u", strictly_decreasing(mpc));
    rep.require("p_h (CMPC) strictly decreasing in m_u", strictly_decreasing(cmpc));
    bool dominates = true;
    for (std::size_t i = 1; i < m_us.size(); ++i)
        if (!(cmpc[i] > mpc[i])) dominates = false;
    rep.require("CMPC hit probability above MPC for m_u > 0", dominates);
    rep.exact("policies agree at m_u = 0", cmpc[0] - mpc[0], 0.0);
}

void fig5(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> weights = {0.25, 0.5, 0.75};
    ScenarioParams base = spec.resolve_params();

    std::vector<std::vector<double>> value(weights.size());
    csv << "lambda,value_w25,value_w50,value_w75,q_s_star\n";
    for (double lambda = 0.05; lambda < 0.451; lambda += 0.05) {
        ScenarioParams p = base;
        p.arrival_rate = lambda;
        csv << csv_number(lambda);
        double q_s_star = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            OptimizationResult r = optimize_stable(inputs_from(p), weights[i]);
            value[i].push_back(r.best_value);
            q_s_star = r.best_q_s;
            csv << ',' << csv_number(r.best_value);
        }
        csv << ',' << csv_number(q_s_star) << '\n';
    }
    rep.line("Maximum weighted sum throughput vs arrival rate (stable queue):");
    rep.require("w=1/4 curve strictly decreasing in lambda", strictly_decreasing(value[0]));
    rep.require("w=1/2 curve strictly increasing in lambda", strictly_increasing(value[1]));
    rep.require("w=3/4 curve strictly increasing in lambda", strictly_increasing(value[2]));
}

void fig6(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> weights = {0.25, 0.5, 0.75};
    ScenarioParams base = spec.resolve_params();
    base.arrival_rate = 0.4;
    auto points = catalog_sweep(spec, kCapacitySweep);

    std::vector<std::vector<double>> value(weights.size());
    csv << "q_u,p_h,value_w25,value_w50,value_w75\n";
    for (const CachePoint& point : points) {
        ScenarioParams p = base;
        p.external_request_prob = point.q_u;
        p.helper_hit_prob = point.p_h;
        csv << csv_number(point.q_u) << ',' << csv_number(point.p_h);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            OptimizationResult r = optimize_stable(inputs_from(p), weights[i]);
            value[i].push_back(r.best_value);
            csv << ',' << csv_number(r.best_value);
        }
        csv << '\n';
    }
    rep.line("Maximum weighted sum throughput vs q_U (stable queue, lambda=0.4):");
    // Each curve rises with q_U until the very last point, where the extra
    // traffic makes the stability constraint bind harder.
    for (std::size_t i = 0; i < weights.size(); ++i) {
        std::vector<double> head(value[i].begin(), value[i].end() - 1);
        rep.require("w=" + csv_number(weights[i]) + " curve increasing below the largest q_u",
                    strictly_increasing(head));
    }
    rep.require("w=1/4 gains more over the sweep than w=3/4",
                value[0].back() - value[0].front() > value[2].back() - value[2].front());
}

void fig7(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    ScenarioParams base = spec.resolve_params();
    double unstable_delay = delay_total(base, Regime::unstable);

    std::vector<double> stable_delay;
    csv << "lambda,delay_stable,delay_unstable\n";
    for (double lambda = 0.05; lambda < 0.401; lambda += 0.05) {
        ScenarioParams p = base;
        p.arrival_rate = lambda;
        stable_delay.push_back(delay_total(p, Regime::stable));
        csv << csv_number(lambda) << ',' << csv_number(stable_delay.back()) << ','
            << csv_number(unstable_delay) << '\n';
    }
    rep.line("Average content delay vs arrival rate (q_S=0.9, alpha=0.7):");
    rep.require("delay strictly increasing in lambda", strictly_increasing(stable_delay));
    rep.require("delay at least one slot", stable_delay.front() >= 1.0);
    rep.require("stable delay below the saturated-queue delay",
                stable_delay.back() < unstable_delay);
}

void fig8(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> lambdas = {0.2, 0.4};
    ScenarioParams base = spec.resolve_params();

    std::vector<std::vector<double>> stable_delay(lambdas.size());
    std::vector<double> unstable_delay;
    csv << "alpha,delay_stable_l02,delay_stable_l04,delay_unstable\n";
    for (double alpha = 0.2; alpha < 1.001; alpha += 0.05) {
        ScenarioParams p = base;
        p.dc_availability = alpha;
        csv << csv_number(alpha);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            p.arrival_rate = lambdas[i];
            if (is_stable(p)) {
                stable_delay[i].push_back(delay_total(p, Regime::stable));
                csv << ',' << csv_number(stable_delay[i].back());
            } else {
                csv << ',';  // below the stability region; the curve starts later
            }
        }
        unstable_delay.push_back(delay_total(p, Regime::unstable));
        csv << ',' << csv_number(unstable_delay.back()) << '\n';
    }
    rep.line("Average content delay vs data-center availability (q_S=0.9):");
    rep.require("lambda=0.2 stable delay strictly decreasing in alpha",
                strictly_decreasing(stable_delay[0]));
    rep.require("lambda=0.4 stable delay strictly decreasing in alpha",
                strictly_decreasing(stable_delay[1]));
    rep.require("unstable delay strictly decreasing in alpha",
                strictly_decreasing(unstable_delay));
    rep.require("lambda=0.4 curve has fewer feasible points than lambda=0.2",
                stable_delay[1].size() < stable_delay[0].size());
    rep.require("stable delay below unstable delay at every shared alpha",
                stable_delay[0].back() < unstable_delay.back() &&
                    stable_delay[1].back() < unstable_delay.back());
}

void fig9(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> lambdas = {0.2, 0.4};
    ScenarioParams base = spec.resolve_params();

    std::vector<std::vector<double>> stable_delay(lambdas.size());
    std::vector<double> unstable_delay;
    csv << "q_s,delay_stable_l02,delay_stable_l04,delay_unstable\n";
    for (double q_s = 0.1; q_s < 1.001; q_s += 0.05) {
        ScenarioParams p = base;
        p.tx_prob = q_s;
        csv << csv_number(q_s);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            p.arrival_rate = lambdas[i];
            if (is_stable(p)) {
                stable_delay[i].push_back(delay_total(p, Regime::stable));
                csv << ',' << csv_number(stable_delay[i].back());
            } else {
                csv << ',';
            }
        }
        unstable_delay.push_back(delay_total(p, Regime::unstable));
        csv << ',' << csv_number(unstable_delay.back()) << '\n';
    }
    rep.line("Average content delay vs helper transmission probability:");
    rep.require("lambda=0.2 stable delay constant in q_s (within 1e-9)",
                constant_within(stable_delay[0], 1e-9));
    rep.require("lambda=0.4 stable delay constant in q_s (within 1e-9)",
                constant_within(stable_delay[1], 1e-9));
    rep.require("unstable delay strictly increasing in q_s",
                strictly_increasing(unstable_delay));
}

void fig10(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> lambdas = {0.2, 0.4};
    ScenarioParams base = spec.resolve_params();
    auto points = catalog_sweep(spec, kCapacitySweep);

    std::vector<std::vector<double>> stable_delay(lambdas.size());
    std::vector<double> unstable_delay;
    csv << "q_u,p_h,delay_stable_l02,delay_stable_l04,delay_unstable\n";
    for (const CachePoint& point : points) {
        ScenarioParams p = base;
        p.external_request_prob = point.q_u;
        p.helper_hit_prob = point.p_h;
        csv << csv_number(point.q_u) << ',' << csv_number(point.p_h);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            p.arrival_rate = lambdas[i];
            if (is_stable(p)) {
                stable_delay[i].push_back(delay_total(p, Regime::stable));
                csv << ',' << csv_number(stable_delay[i].back());
            } else {
                csv << ',';
            }
        }
        unstable_delay.push_back(delay_total(p, Regime::unstable));
        csv << ',' << csv_number(unstable_delay.back()) << '\n';
    }
    rep.line("Average content delay vs q_U (q_S=0.9, alpha=0.7):");
    rep.require("unstable delay strictly decreasing in q_u (hit probability rises)",
                strictly_decreasing(unstable_delay));
    rep.require("stable delay below unstable delay at every q_u",
                [&] {
                    for (std::size_t i = 0; i < stable_delay[0].size(); ++i)
                        if (!(stable_delay[0][i] < unstable_delay[i])) return false;
                    return true;
                }());
}

void fig11(const ExperimentSpec& spec, std::ostream& csv, Reporter& rep) {
    const std::vector<double> weights = {0.25, 0.5, 0.75};
    ScenarioParams base = spec.resolve_params();
    auto points = catalog_sweep(spec, kCapacitySweep);

    std::vector<std::vector<double>> value(weights.size());
    csv << "q_u,p_h,value_w25,value_w50,value_w75\n";
    for (const CachePoint& point : points) {
        ScenarioParams p = base;
        p.external_request_prob = point.q_u;
        p.helper_hit_prob = point.p_h;
        csv << csv_number(point.q_u) << ',' << csv_number(point.p_h);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            OptimizationResult r = optimize_unstable(inputs_from(p), weights[i]);
            value[i].push_back(r.best_value);
            csv << ',' << csv_number(r.best_value);
        }
        csv << '\n';
    }
    rep.line("Maximum weighted sum throughput vs q_U (saturated queue):");
    rep.require("w=1/4 curve strictly increasing in q_u", strictly_increasing(value[0]));
    // The w=1/2 curve falls while the (q_s=1, q_c=0) corner is optimal; at
    // the largest q_u the optimum jumps to (0, 1) and the value ticks up.
    std::vector<double> w50_head(value[1].begin(), value[1].end() - 1);
    rep.require("w=1/2 curve decreasing below the largest q_u",
                strictly_decreasing(w50_head));
    rep.require("w=1/2 value ticks up where the optimum switches corner",
                value[1].back() > value[1][value[1].size() - 2]);
    rep.require("w=3/4 curve strictly decreasing in q_u", strictly_decreasing(value[2]));
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> targets = {
        "table2", "table3", "table4", "table5", "table6", "table7", "table8",
        "fig2",   "fig5",   "fig6",   "fig7",   "fig8",   "fig9",   "fig10",  "fig11"};
    return targets;
}

bool run_reproduce(const std::string& target, const ExperimentSpec& spec, std::ostream& csv,
                   std::ostream& report) {
    Reporter rep{report};
    rep.line("reproduction target: " + target);

    if (target == "table2") {
        table2(spec, csv, rep);
    } else if (target == "table3") {
        table3(spec, csv, rep);
    } else if (target == "table4") {
        table4(spec, csv, rep);
    } else if (target == "table5") {
        table5(spec, csv, rep);
    } else if (target == "table6") {
        unstable_capacity_table(spec, csv, rep, 0.25, {0, 0, 0, 0, 0, 0}, {0, 1, 1, 1, 1, 1});
    } else if (target == "table7") {
        unstable_capacity_table(spec, csv, rep, 0.5, {1, 1, 1, 1, 1, 0}, {0, 0, 0, 0, 0, 1});
    } else if (target == "table8") {
        unstable_capacity_table(spec, csv, rep, 0.75, {1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 0});
    } else if (target == "fig2") {
        fig2(spec, csv, rep);
    } else if (target == "fig5") {
        fig5(spec, csv, rep);
    } else if (target == "fig6") {
        fig6(spec, csv, rep);
    } else if (target == "fig7") {
        fig7(spec, csv, rep);
    } else if (target == "fig8") {
        fig8(spec, csv, rep);
    } else if (target == "fig9") {
        fig9(spec, csv, rep);
    } else if (target == "fig10") {
        fig10(spec, csv, rep);
    } else if (target == "fig11") {
        fig11(spec, csv, rep);
    } else {
        throw ConfigError("unknown reproduce target '" + target + "'");
    }

    rep.line(std::string("RESULT: ") + (rep.ok ? "PASS" : "FAIL"));
    return rep.ok;
}

}  // namespace cachenet::cli
