#include "gti/decode.hpp"

#include <stdexcept>

namespace gti {

std::vector<std::int64_t> Classification::with_label(Label label) const {
  std::vector<std::int64_t> out;
  for (std::size_t j = 0; j < labels.size(); ++j)
    if (labels[j] == label) out.push_back(static_cast<std::int64_t>(j));
  return out;
}

Classification decode_exact(const PoolingDesign& design,
                            const OutcomeVector& outcomes,
                            const ExactParams& params) {
  const auto stats = all_item_stats(design, outcomes);
  Classification c;
  c.labels.resize(stats.size());
  for (std::size_t j = 0; j < stats.size(); ++j) {
    c.labels[j] = classify_item(stats[j].t_count, stats[j].s_count,
                                params.threshold_fraction);
    if (stats[j].t_count == 0)
      c.non_participants.push_back(static_cast<std::int64_t>(j));
  }
  return c;
}

Classification decode_ub(const PoolingDesign& design1,
                         const OutcomeVector& outcomes1,
                         const PoolingDesign& design2,
                         const OutcomeVector& outcomes2,
                         const UbParams& params) {
  if (design1.items() != design2.items())
    throw std::invalid_argument("the two designs cover different item counts");
  const auto stats1 = all_item_stats(design1, outcomes1);
  const auto stats2 = all_item_stats(design2, outcomes2);
  Classification c;
  c.labels.resize(stats1.size());
  for (std::size_t j = 0; j < stats1.size(); ++j) {
    const bool declared_defective =
        static_cast<double>(stats1[j].s_count) >
        static_cast<double>(stats1[j].t_count) *
            params.stage1_threshold_fraction;
    if (declared_defective) {
      c.labels[j] = Label::Defective;
    } else {
      c.labels[j] =
          stats2[j].s_count == 0 ? Label::Inhibitor : Label::Normal;
    }
    if (stats1[j].t_count == 0 && stats2[j].t_count == 0)
      c.non_participants.push_back(static_cast<std::int64_t>(j));
  }
  return c;
}

std::vector<std::int64_t> defective_set(const Classification& c) {
  return c.with_label(Label::Defective);
}

}  // namespace gti
