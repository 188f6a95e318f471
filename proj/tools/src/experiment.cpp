#include "experiment.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "cachenet/errors.hpp"
#include "cachenet/optimizer.hpp"

namespace cachenet::cli {

namespace {

const char* axis_name(SweepSpec::Axis axis) {
    switch (axis) {
        case SweepSpec::Axis::lambda: return "lambda";
        case SweepSpec::Axis::alpha: return "alpha";
        case SweepSpec::Axis::q_s: return "q_s";
        case SweepSpec::Axis::m_u: return "m_u";
        case SweepSpec::Axis::w: return "w";
        case SweepSpec::Axis::none: break;
    }
    return "point";
}

// Applies one sweep point to a copy of the spec.
ExperimentSpec at_point(const ExperimentSpec& spec, double value) {
    ExperimentSpec out = spec;
    switch (spec.sweep.axis) {
        case SweepSpec::Axis::lambda: out.arrival_rate = value; break;
        case SweepSpec::Axis::alpha: out.dc_availability = value; break;
        case SweepSpec::Axis::q_s: out.tx_prob = value; break;
        case SweepSpec::Axis::m_u:
            out.catalog->user_capacity = static_cast<std::size_t>(std::llround(value));
            break;
        case SweepSpec::Axis::w: out.weight = value; break;
        case SweepSpec::Axis::none: break;
    }
    return out;
}

std::vector<double> sweep_points(const ExperimentSpec& spec) {
    if (spec.sweep.axis == SweepSpec::Axis::none) return {0.0};
    return spec.sweep.points();
}

void for_each_point(const ExperimentSpec& spec,
                    const std::function<void(const ExperimentSpec&, double)>& body) {
    for (double v : sweep_points(spec)) body(at_point(spec, v), v);
}

void write_param_columns(std::ostream& out, const ScenarioParams& p, double weight) {
    out << csv_number(p.arrival_rate) << ',' << csv_number(p.tx_prob) << ','
        << csv_number(p.external_request_prob) << ',' << csv_number(p.helper_assist_prob) << ','
        << csv_number(p.helper_hit_prob) << ',' << csv_number(p.dc_availability) << ','
        << csv_number(weight);
}

constexpr const char* kParamHeader = "lambda,q_s,q_u,q_c,p_h,alpha,weight";

}  // namespace

std::string csv_number(double value) {
    if (delay_unreachable(value) && value > 0) return "unreachable";
    std::ostringstream os;
    os.precision(6);
    os << value;
    return os.str();
}

void run_analyze(const ExperimentSpec& spec, std::ostream& out) {
    out << axis_name(spec.sweep.axis) << ',' << kParamHeader
        << ",mu,stable,busy_prob,t_s,t_u,weighted_sum,delay,delay_s,delay_dc\n";
    for_each_point(spec, [&](const ExperimentSpec& point, double value) {
        ScenarioParams params = point.resolve_params();
        AnalysisReport report = analyze(params, point.weight);
        out << csv_number(value) << ',';
        write_param_columns(out, params, point.weight);
        out << ',' << csv_number(report.service_rate) << ',' << (report.stable ? 1 : 0) << ','
            << csv_number(report.queue_busy_prob) << ',' << csv_number(report.throughput_s) << ','
            << csv_number(report.throughput_u) << ',' << csv_number(report.weighted_sum) << ','
            << csv_number(report.delay_total) << ',' << csv_number(report.delay_helper_state)
            << ',' << csv_number(report.delay_dc_state) << '\n';
    });
}

void run_optimize(const ExperimentSpec& spec, std::ostream& out) {
    out << axis_name(spec.sweep.axis)
        << ",lambda,q_u,p_h,alpha,weight,regime,best_q_s,best_q_c,best_value,"
           "candidates_evaluated,q_c_tie,interior_candidate_won\n";
    for_each_point(spec, [&](const ExperimentSpec& point, double value) {
        ScenarioParams params = point.resolve_params();
        OptimizerInputs inputs{params.arrival_rate, params.external_request_prob,
                               params.helper_hit_prob, params.dc_availability, params.links};
        OptimizationResult result = point.optimize_regime == Regime::stable
                                        ? optimize_stable(inputs, point.weight)
                                        : optimize_unstable(inputs, point.weight);
        out << csv_number(value) << ',' << csv_number(params.arrival_rate) << ','
            << csv_number(params.external_request_prob) << ','
            << csv_number(params.helper_hit_prob) << ',' << csv_number(params.dc_availability)
            << ',' << csv_number(point.weight) << ','
            << (result.regime == Regime::stable ? "stable" : "unstable") << ','
            << csv_number(result.best_q_s) << ',' << csv_number(result.best_q_c) << ','
            << csv_number(result.best_value) << ',' << result.candidates_evaluated << ','
            << (result.q_c_tie ? 1 : 0) << ',' << (result.interior_candidate_won ? 1 : 0)
            << '\n';
    });
}

void run_simulate(const ExperimentSpec& spec, std::ostream& out) {
    out << axis_name(spec.sweep.axis) << ',' << kParamHeader
        << ",sim_t_s,sim_t_s_se,sim_t_u,sim_t_u_se,sim_busy,sim_busy_se,"
           "sim_delay,sim_delay_se,ana_t_s,ana_t_u,ana_busy,ana_delay,"
           "z_t_s,z_t_u,z_busy,z_delay\n";
    for_each_point(spec, [&](const ExperimentSpec& point, double value) {
        ScenarioParams params = point.resolve_params();
        SimConfig config;
        config.params = params;
        config.num_slots = point.num_slots;
        config.warmup_slots = point.warmup_slots;
        config.num_replications = point.num_replications;
        config.seed = point.seed;
        config.request_model = point.request_model;
        SimulationReport sim = simulate(config);

        AnalysisReport ana = analyze(params, point.weight);
        double ana_delay = ana.delay_total;

        auto z = [](const Estimate& e, double reference) {
            return e.std_error > 0.0 ? (e.mean - reference) / e.std_error
                                     : std::numeric_limits<double>::quiet_NaN();
        };
        out << csv_number(value) << ',';
        write_param_columns(out, params, point.weight);
        out << ',' << csv_number(sim.throughput_s.mean) << ','
            << csv_number(sim.throughput_s.std_error) << ',' << csv_number(sim.throughput_u.mean)
            << ',' << csv_number(sim.throughput_u.std_error) << ','
            << csv_number(sim.busy_fraction.mean) << ',' << csv_number(sim.busy_fraction.std_error)
            << ',' << csv_number(sim.mean_delay.mean) << ',' << csv_number(sim.mean_delay.std_error)
            << ',' << csv_number(ana.throughput_s) << ',' << csv_number(ana.throughput_u) << ','
            << csv_number(ana.queue_busy_prob) << ',' << csv_number(ana_delay) << ','
            << csv_number(z(sim.throughput_s, ana.throughput_s)) << ','
            << csv_number(z(sim.throughput_u, ana.throughput_u)) << ','
            << csv_number(z(sim.busy_fraction, ana.queue_busy_prob)) << ','
            << csv_number(z(sim.mean_delay, ana_delay)) << '\n';
    });
}

}  // namespace cachenet::cli
