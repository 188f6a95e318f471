#include <cmath>
#include <random>

#include "cachenet/analysis.hpp"
#include "cachenet/errors.hpp"
#include "doctest.h"

using namespace cachenet;

namespace {

LinkProbabilities reference_links() {
    LinkProbabilities links;
    links.p_sd_s = 0.9394130628134758;
    links.p_sd_s_dc = 0.5781003463467543;
    links.p_su_s = 0.9747249016017939;
    links.p_dc_dc = 0.9598675238808704;
    links.p_dc_s_dc = 0.3691798168772578;
    return links;
}

ScenarioParams reference_scenario() {
    ScenarioParams p;
    p.arrival_rate = 0.2;
    p.tx_prob = 0.9;
    p.external_request_prob = 0.8647193064031946;
    p.helper_assist_prob = 0.5;
    p.helper_hit_prob = 0.30791204154846313;
    p.dc_availability = 0.7;
    p.links = reference_links();
    return p;
}

// Draws a full random scenario with a stable queue. Link probabilities are
// drawn jointly so the interfered values stay below the clean ones.
ScenarioParams random_stable_scenario(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScenarioParams p;
    p.tx_prob = 0.05 + 0.95 * u(rng);
    p.external_request_prob = u(rng);
    p.helper_assist_prob = u(rng);
    p.helper_hit_prob = u(rng);
    p.dc_availability = 0.05 + 0.95 * u(rng);
    p.links.p_sd_s = 0.3 + 0.7 * u(rng);
    p.links.p_sd_s_dc = p.links.p_sd_s * u(rng);
    p.links.p_su_s = 0.3 + 0.7 * u(rng);
    p.links.p_dc_dc = 0.3 + 0.7 * u(rng);
    p.links.p_dc_s_dc = p.links.p_dc_dc * u(rng);
    p.arrival_rate = 0.98 * u(rng) * service_rate(p);
    return p;
}

// Independent re-derivation of the user throughput with a stable queue: the
// per-slot case split over (helper transmitting, assist, hit), with the
// helper transmitting a fraction lambda/(mu/q_S) * q_S of the slots.
double throughput_u_by_case_split(const ScenarioParams& p) {
    double x = p.tx_prob * p.arrival_rate / service_rate(p);
    double q_c_hit = p.helper_assist_prob * p.helper_hit_prob;
    double idle_term = q_c_hit * p.links.p_su_s +
                       (1.0 - q_c_hit) * p.dc_availability * p.links.p_dc_dc;
    return p.external_request_prob *
           (x * p.dc_availability * p.links.p_dc_s_dc + (1.0 - x) * idle_term);
}

// Independent re-derivation of the total delay: expected absorption time of
// the three-state chain (fresh request / known helper hit / data-center
// retry) under an i.i.d. per-slot busy indicator.
double delay_by_absorption(const ScenarioParams& p, double busy) {
    double x = p.tx_prob * busy;
    double alpha = p.dc_availability;
    double retry = p.helper_retry_uses_su_link ? p.links.p_su_s : p.links.p_sd_s;

    double s_helper = x * alpha * p.links.p_dc_s_dc +
                      (1.0 - x) * (p.helper_assist_prob * retry +
                                   (1.0 - p.helper_assist_prob) * alpha * p.links.p_dc_dc);
    double s_dc = alpha * (x * p.links.p_dc_s_dc + (1.0 - x) * p.links.p_dc_dc);
    double e_helper = 1.0 / s_helper;
    double e_dc = 1.0 / s_dc;

    // Fresh slot: the chain stays fresh after a failed interfered attempt,
    // otherwise resolves to delivery or one of the two retry states.
    double stay = x * (1.0 - alpha * p.links.p_dc_s_dc);
    double to_helper =
        (1.0 - x) * (p.helper_hit_prob * p.helper_assist_prob * (1.0 - retry) +
                     p.helper_hit_prob * (1.0 - p.helper_assist_prob) *
                         (1.0 - alpha * p.links.p_dc_dc));
    double to_dc =
        (1.0 - x) * (1.0 - p.helper_hit_prob) * (1.0 - alpha * p.links.p_dc_dc);
    return (1.0 + to_helper * e_helper + to_dc * e_dc) / (1.0 - stay);
}

}  // namespace

TEST_CASE("service rate and busy probability at the reference point") {
    ScenarioParams p = reference_scenario();
    CHECK(service_rate(p) == doctest::Approx(0.4293095598705552).epsilon(1e-12));
    CHECK(is_stable(p));
    CHECK(queue_busy_prob(p) == doctest::Approx(0.2 / 0.4293095598705552).epsilon(1e-12));
}

TEST_CASE("stability is strict at the boundary") {
    ScenarioParams p = reference_scenario();
    p.arrival_rate = service_rate(p);
    CHECK_FALSE(is_stable(p));
    CHECK_THROWS_AS(queue_busy_prob(p), RegimeError);
    CHECK_THROWS_AS(throughput_u_stable(p), RegimeError);
    CHECK(throughput_s(p) == doctest::Approx(service_rate(p)));
}

TEST_CASE("zero arrivals mean an empty queue and zero helper throughput") {
    ScenarioParams p = reference_scenario();
    p.arrival_rate = 0.0;
    CHECK(queue_busy_prob(p) == 0.0);
    CHECK(throughput_s(p) == 0.0);
}

TEST_CASE("stable user throughput equals the per-slot case split") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        ScenarioParams p = random_stable_scenario(rng);
        if (!is_stable(p)) continue;
        CHECK(throughput_u_stable(p) ==
              doctest::Approx(throughput_u_by_case_split(p)).epsilon(1e-12));
    }
}

TEST_CASE("stable user throughput and delay are invariant in q_S") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        ScenarioParams p = random_stable_scenario(rng);
        if (!is_stable(p)) continue;
        double t_ref = throughput_u_stable(p);
        double d_ref = delay_total(p, Regime::stable);
        double q_s_min = p.arrival_rate / service_rate(p) * p.tx_prob;
        for (double q_s : {1.0, 0.5 * (q_s_min + 1.0) + 1e-9}) {
            ScenarioParams q = p;
            q.tx_prob = q_s;
            REQUIRE(is_stable(q));
            CHECK(throughput_u_stable(q) == doctest::Approx(t_ref).epsilon(1e-12));
            if (!delay_unreachable(d_ref))
                CHECK(delay_total(q, Regime::stable) == doctest::Approx(d_ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("stable throughput converges to the saturated form at the boundary") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        ScenarioParams p = random_stable_scenario(rng);
        p.arrival_rate = service_rate(p) * (1.0 - 1e-12);
        if (!is_stable(p)) continue;
        CHECK(throughput_u_stable(p) ==
              doctest::Approx(throughput_u_unstable(p)).epsilon(1e-9));
    }
}

TEST_CASE("weighted sum endpoints") {
    ScenarioParams p = reference_scenario();
    CHECK(weighted_sum_throughput(p, 1.0, Regime::stable) == doctest::Approx(p.arrival_rate));
    CHECK(weighted_sum_throughput(p, 0.0, Regime::stable) ==
          doctest::Approx(throughput_u_stable(p)));
    CHECK(weighted_sum_throughput(p, 0.0, Regime::unstable) ==
          doctest::Approx(throughput_u_unstable(p)));
    CHECK_THROWS_AS(weighted_sum_throughput(p, 1.5, Regime::stable), std::invalid_argument);
}

TEST_CASE("total delay equals the absorption-time derivation") {
    std::mt19937_64 rng(20240812);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        ScenarioParams p = random_stable_scenario(rng);
        if (!is_stable(p)) continue;
        p.helper_retry_uses_su_link = (i % 2 == 0);
        double busy = queue_busy_prob(p);
        CHECK(delay_total(p, Regime::stable) ==
              doctest::Approx(delay_by_absorption(p, busy)).epsilon(1e-12));
        CHECK(delay_total(p, Regime::unstable) ==
              doctest::Approx(delay_by_absorption(p, 1.0)).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked > 500);
}

TEST_CASE("retry-state delays are geometric means, cross-checked by Monte Carlo") {
    ScenarioParams p = reference_scenario();
    double busy = queue_busy_prob(p);
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    auto empirical = [&](auto success_given_busy) {
        const int trials = 40000;
        double sum = 0.0, sum_sq = 0.0;
        for (int t = 0; t < trials; ++t) {
            int slots = 0;
            for (;;) {
                ++slots;
                bool tx = u(rng) < p.tx_prob * busy;
                if (u(rng) < success_given_busy(tx)) break;
            }
            sum += slots;
            sum_sq += double(slots) * slots;
        }
        double mean = sum / trials;
        double var = (sum_sq - sum * sum / trials) / (trials - 1);
        return std::pair{mean, std::sqrt(var / trials)};
    };

    auto [dc_mean, dc_se] = empirical([&](bool tx) {
        return p.dc_availability * (tx ? p.links.p_dc_s_dc : p.links.p_dc_dc);
    });
    CHECK(std::abs(dc_mean - delay_dc_state(p, busy)) < 3.0 * dc_se);

    auto [s_mean, s_se] = empirical([&](bool tx) {
        return tx ? p.dc_availability * p.links.p_dc_s_dc
                  : p.helper_assist_prob * p.links.p_sd_s +
                        (1.0 - p.helper_assist_prob) * p.dc_availability * p.links.p_dc_dc;
    });
    CHECK(std::abs(s_mean - delay_helper_state(p, busy)) < 3.0 * s_se);
}

TEST_CASE("an unreachable data center makes external content unreachable") {
    ScenarioParams p = reference_scenario();
    p.dc_availability = 0.0;
    CHECK(delay_unreachable(delay_dc_state(p, 0.4)));
    CHECK(delay_unreachable(delay_total(p, Regime::unstable)));
    // with a guaranteed helper hit and assist the content still arrives
    p.helper_hit_prob = 1.0;
    p.helper_assist_prob = 1.0;
    p.tx_prob = 0.0;
    CHECK_FALSE(delay_unreachable(delay_total(p, Regime::unstable)));
}

TEST_CASE("delay is at least one slot and grows with the arrival rate") {
    ScenarioParams p = reference_scenario();
    double previous = 1.0;
    for (double lambda : {0.05, 0.15, 0.25, 0.35}) {
        p.arrival_rate = lambda;
        double d = delay_total(p, Regime::stable);
        CHECK(d >= previous);
        previous = d;
    }
    CHECK(delay_total(p, Regime::unstable) > previous);
}

TEST_CASE("analyze assembles a consistent report") {
    ScenarioParams p = reference_scenario();
    AnalysisReport report = analyze(p, 0.5);
    CHECK(report.stable);
    CHECK(report.throughput_s == doctest::Approx(p.arrival_rate));
    CHECK(report.throughput_u == doctest::Approx(throughput_u_stable(p)));
    CHECK(report.weighted_sum ==
          doctest::Approx(0.5 * report.throughput_s + 0.5 * report.throughput_u));
    CHECK(report.delay_total == doctest::Approx(delay_total(p, Regime::stable)));

    p.arrival_rate = 0.6;
    report = analyze(p, 0.5);
    CHECK_FALSE(report.stable);
    CHECK(report.queue_busy_prob == 1.0);
    CHECK(report.throughput_u == doctest::Approx(throughput_u_unstable(p)));
}
