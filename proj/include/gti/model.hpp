#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gti {

/// Ground-truth partition of items into defectives, inhibitors and normals.
///
/// Items are zero-based everywhere in the C++ API; the text file formats and
/// the CLI JSON use one-based indices and conversion happens at that boundary.
class Population {
 public:
  Population(std::int64_t n, std::vector<std::int64_t> defectives,
             std::vector<std::int64_t> inhibitors);

  std::int64_t n() const { return n_; }
  const std::vector<std::int64_t>& defectives() const { return defectives_; }
  const std::vector<std::int64_t>& inhibitors() const { return inhibitors_; }
  std::int64_t defective_count() const {
    return static_cast<std::int64_t>(defectives_.size());
  }
  std::int64_t inhibitor_count() const {
    return static_cast<std::int64_t>(inhibitors_.size());
  }

  bool is_defective(std::int64_t item) const;
  bool is_inhibitor(std::int64_t item) const;

 private:
  std::int64_t n_;
  std::vector<std::int64_t> defectives_;  // sorted
  std::vector<std::int64_t> inhibitors_;  // sorted
};

/// T x n binary incidence matrix; rows are tests, columns are items.
/// Rows are bit-packed into 64-bit words so that intersecting a test with an
/// item set is a word-wise AND.
class PoolingDesign {
 public:
  PoolingDesign(std::int64_t tests, std::int64_t items);

  static PoolingDesign from_rows(
      const std::vector<std::vector<int>>& rows);

  std::int64_t tests() const { return tests_; }
  std::int64_t items() const { return items_; }
  std::int64_t words_per_row() const { return words_per_row_; }

  bool entry(std::int64_t test, std::int64_t item) const {
    return (words_[static_cast<std::size_t>(test * words_per_row_ +
                                            (item >> 6))] >>
            (item & 63)) &
           1ULL;
  }
  void set_entry(std::int64_t test, std::int64_t item, bool value);

  std::span<const std::uint64_t> row(std::int64_t test) const {
    return {words_.data() + test * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }
  std::span<std::uint64_t> row(std::int64_t test) {
    return {words_.data() + test * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }

  /// Column indices of the ones in a row, ascending.
  std::vector<std::int64_t> row_items(std::int64_t test) const;

 private:
  std::int64_t tests_;
  std::int64_t items_;
  std::int64_t words_per_row_;
  std::vector<std::uint64_t> words_;
};

/// Length-T binary outcome vector; outcomes[i] in {0,1}.
using OutcomeVector = std::vector<std::uint8_t>;

/// Per-item participation statistics: t_count = |T_j| tests containing the
/// item, s_count = |S_j| positive-outcome tests containing it.
struct ItemStats {
  std::int64_t item = 0;
  std::int64_t t_count = 0;
  std::int64_t s_count = 0;

  bool operator==(const ItemStats&) const = default;
};

/// Bit mask over items, one word per 64 items.
std::vector<std::uint64_t> item_mask(std::int64_t n,
                                     const std::vector<std::int64_t>& items);

/// Outcome rule: a test is positive iff it contains at least one defective
/// and no inhibitors. Deterministic.
OutcomeVector simulate_outcomes(const PoolingDesign& design,
                                const Population& truth);

ItemStats item_stats(const PoolingDesign& design, const OutcomeVector& outcomes,
                     std::int64_t item);

/// Stats for every item in one pass over the matrix (O(nT) worst case,
/// O(#ones) on sparse designs).
std::vector<ItemStats> all_item_stats(const PoolingDesign& design,
                                      const OutcomeVector& outcomes);

}  // namespace gti
