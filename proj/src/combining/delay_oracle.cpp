#include <pbsched/combining/delay_oracle.hpp>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace pbsched::combining {

double delay_rr(double p_i, double p_j) noexcept {
    return std::min(p_i, p_j);
}

double delay_blind(JobId i, double p_i, double beta_i, JobId j, double p_j, double beta_j) noexcept {
    const double s_i = beta_i * p_i;
    const double s_j = beta_j * p_j;
    const bool i_first = s_i < s_j || (s_i == s_j && i < j);
    return i_first ? p_i : s_j;
}

double delay_permutation(double p_i, std::size_t position_i, std::size_t position_j) noexcept {
    return position_i < position_j ? p_i : 0.0;
}

DelayOracle rr_oracle() {
    return {"RR", true, [](const Instance& inst, JobId i, JobId j) { return delay_rr(inst.p(i), inst.p(j)); }};
}

DelayOracle blind_oracle() {
    return {"BlindFollow", true, [](const Instance& inst, JobId i, JobId j) {
                return delay_blind(i, inst.p(i), inst.bar(i).threshold(0), j, inst.p(j), inst.bar(j).threshold(0));
            }};
}

DelayOracle permutation_oracle(std::vector<JobId> order) {
    auto position = std::make_shared<std::vector<std::size_t>>(order.size());
    std::vector<char> seen(order.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (order[k] >= order.size() || seen[order[k]]) {
            throw std::invalid_argument("permutation oracle: order is not a permutation");
        }
        seen[order[k]] = 1;
        (*position)[order[k]] = k;
    }
    return {"FollowPermutation", true, [position](const Instance& inst, JobId i, JobId j) {
                return delay_permutation(inst.p(i), position->at(i), position->at(j));
            }};
}

} // namespace pbsched::combining
