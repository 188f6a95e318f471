#include "cachenet/phy.hpp"

#include <cmath>
#include <stdexcept>

namespace cachenet {

namespace {

void check_link(const LinkBudget& link) {
    if (!(link.tx_power_w > 0.0)) {
        throw std::invalid_argument("LinkBudget: tx_power_w must be > 0");
    }
    if (!(link.distance_m > 0.0)) {
        throw std::invalid_argument("LinkBudget: distance_m must be > 0");
    }
    if (!(link.pathloss_exponent > 0.0)) {
        throw std::invalid_argument("LinkBudget: pathloss_exponent must be > 0");
    }
    if (!(link.noise_power_w >= 0.0)) {
        throw std::invalid_argument("LinkBudget: noise_power_w must be >= 0");
    }
    if (!(link.sinr_threshold >= 0.0)) {
        throw std::invalid_argument("LinkBudget: sinr_threshold must be >= 0");
    }
}

void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("LinkProbabilities: ") + name +
                                    " outside [0,1]");
    }
}

}  // namespace

void LinkProbabilities::validate() const {
    check_prob(p_sd_s, "p_sd_s");
    check_prob(p_sd_s_dc, "p_sd_s_dc");
    check_prob(p_su_s, "p_su_s");
    check_prob(p_dc_dc, "p_dc_dc");
    check_prob(p_dc_s_dc, "p_dc_s_dc");
    if (p_sd_s_dc > p_sd_s || p_dc_s_dc > p_dc_dc) {
        throw std::invalid_argument(
            "LinkProbabilities: interfered success exceeds interference-free success");
    }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double snr_success(const LinkBudget& link) {
    check_link(link);
    double exponent = link.sinr_threshold * link.noise_power_w *
                      std::pow(link.distance_m, link.pathloss_exponent) /
                      link.tx_power_w;
    return std::exp(-exponent);
}

double sinr_success(const LinkBudget& link, const InterfererSpec& interferer) {
    if (!(interferer.tx_power_w >= 0.0)) {
        throw std::invalid_argument("InterfererSpec: tx_power_w must be >= 0");
    }
    if (!(interferer.distance_m > 0.0)) {
        throw std::invalid_argument("InterfererSpec: distance_m must be > 0");
    }
    double interference =
        link.sinr_threshold * (interferer.tx_power_w / link.tx_power_w) *
        std::pow(link.distance_m / interferer.distance_m, link.pathloss_exponent);
    return snr_success(link) / (1.0 + interference);
}

LinkProbabilities build_link_probabilities(const NetworkGeometry& g) {
    if (!(g.helper_power_mw > 0.0) || !(g.dc_power_mw > 0.0)) {
        throw std::invalid_argument("NetworkGeometry: node powers must be > 0");
    }
    double helper_w = g.helper_power_mw * 1e-3;
    double dc_w = g.dc_power_mw * 1e-3;
    double theta = db_to_linear(g.threshold_db);

    auto budget = [&](double power_w, double distance_m) {
        return LinkBudget{power_w, distance_m, g.pathloss_exponent, g.noise_power_w, theta};
    };

    LinkProbabilities out;
    out.p_sd_s = snr_success(budget(helper_w, g.helper_dest_distance_m));
    out.p_sd_s_dc = sinr_success(budget(helper_w, g.helper_dest_distance_m),
                                 InterfererSpec{dc_w, g.dc_dest_distance_m});
    out.p_su_s = snr_success(budget(helper_w, g.helper_user_distance_m));
    out.p_dc_dc = snr_success(budget(dc_w, g.dc_user_distance_m));
    out.p_dc_s_dc = sinr_success(budget(dc_w, g.dc_user_distance_m),
                                 InterfererSpec{helper_w, g.helper_user_distance_m});
    out.validate();
    return out;
}

}  // namespace cachenet
