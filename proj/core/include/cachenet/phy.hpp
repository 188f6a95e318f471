#pragma once

namespace cachenet {

/// Physical-layer parameters of one directed link. The SINR threshold is
/// linear; use db_to_linear() at the configuration boundary.
struct LinkBudget {
    double tx_power_w = 0.0;
    double distance_m = 0.0;
    double pathloss_exponent = 0.0;
    double noise_power_w = 0.0;
    double sinr_threshold = 0.0;
};

/// One concurrent transmitter seen by the link's receiver.
struct InterfererSpec {
    double tx_power_w = 0.0;
    double distance_m = 0.0;  // to the receiver
};

/// The five Rayleigh-marginalized success probabilities the protocol uses:
/// helper->destination alone and under data-center interference,
/// helper->user alone, data-center->user alone and under helper
/// interference.
struct LinkProbabilities {
    double p_sd_s = 1.0;
    double p_sd_s_dc = 1.0;
    double p_su_s = 1.0;
    double p_dc_dc = 1.0;
    double p_dc_s_dc = 1.0;

    void validate() const;  // throws std::invalid_argument
};

double db_to_linear(double db);

/// Success probability of a link with no interferer: exp(-theta eta r^gamma / P).
double snr_success(const LinkBudget& link);

/// Success probability with one interferer:
/// snr_success(link) / (1 + theta (P_k/P_i) (r_ij/r_kj)^gamma).
double sinr_success(const LinkBudget& link, const InterfererSpec& interferer);

/// Node powers and link distances of the four-node topology. Powers are in
/// milliwatts and the threshold in dB, matching how scenarios are written
/// down; conversion happens inside build_link_probabilities.
struct NetworkGeometry {
    double helper_power_mw = 1.0;
    double dc_power_mw = 10.0;
    double helper_dest_distance_m = 50.0;
    double helper_user_distance_m = 40.0;
    double dc_dest_distance_m = 100.0;
    double dc_user_distance_m = 80.0;
    double pathloss_exponent = 4.0;
    double noise_power_w = 1e-11;
    double threshold_db = 0.0;
};

/// Derives the five link success probabilities from one consistent
/// geometry. Throws std::invalid_argument on non-physical parameters.
LinkProbabilities build_link_probabilities(const NetworkGeometry& geometry);

}  // namespace cachenet
