#pragma once

#include <cstdint>
#include <vector>

#include "gti/design.hpp"
#include "gti/model.hpp"

namespace gti {

enum class Label : std::uint8_t { Defective = 0, Inhibitor = 1, Normal = 2 };

/// Per-item decoding result. Items that appear in no test are forced into
/// the Inhibitor label by the s_count = 0 rule; they are additionally listed
/// in non_participants so a harness can count them as coverage failures
/// instead of silent passes.
struct Classification {
  std::vector<Label> labels;
  std::vector<std::int64_t> non_participants;  // sorted

  std::vector<std::int64_t> with_label(Label label) const;
};

/// Three-region rule for one item: Inhibitor when s = 0, Normal when
/// 1 <= s <= floor(t*f), Defective when s > t*f. The three predicates
/// partition {0..t} for every threshold fraction f.
inline Label classify_item(std::int64_t t_count, std::int64_t s_count,
                           double threshold_fraction) {
  if (s_count == 0) return Label::Inhibitor;
  if (static_cast<double>(s_count) >
      static_cast<double>(t_count) * threshold_fraction)
    return Label::Defective;
  return Label::Normal;
}

/// Exact-knowledge decoder (single matrix), one pass, O(nT).
Classification decode_exact(const PoolingDesign& design,
                            const OutcomeVector& outcomes,
                            const ExactParams& params);

/// Upper-bound decoder. Stage 1 declares defectives from (design1, outcomes1)
/// with threshold qR-based fraction; stage 2 splits the rest into inhibitors
/// (s2 = 0) and normals using (design2, outcomes2). Items absent from both
/// matrices are flagged as non-participants.
Classification decode_ub(const PoolingDesign& design1,
                         const OutcomeVector& outcomes1,
                         const PoolingDesign& design2,
                         const OutcomeVector& outcomes2,
                         const UbParams& params);

/// Items labeled Defective (the defective-classification projection).
std::vector<std::int64_t> defective_set(const Classification& c);

}  // namespace gti
