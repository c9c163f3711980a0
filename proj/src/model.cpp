#include "gti/model.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace gti {

namespace {

std::vector<std::int64_t> sorted_checked(std::vector<std::int64_t> items,
                                         std::int64_t n, const char* what) {
  std::sort(items.begin(), items.end());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] < 0 || items[i] >= n)
      throw std::invalid_argument(std::string(what) + " index out of range");
    if (i > 0 && items[i] == items[i - 1])
      throw std::invalid_argument(std::string(what) + " indices repeated");
  }
  return items;
}

}  // namespace

Population::Population(std::int64_t n, std::vector<std::int64_t> defectives,
                       std::vector<std::int64_t> inhibitors)
    : n_(n),
      defectives_(sorted_checked(std::move(defectives), n, "defective")),
      inhibitors_(sorted_checked(std::move(inhibitors), n, "inhibitor")) {
  if (n_ < 1) throw std::invalid_argument("population size must be positive");
  if (defective_count() + inhibitor_count() > n_)
    throw std::invalid_argument("d + r exceeds population size");
  for (std::int64_t j : defectives_)
    if (std::binary_search(inhibitors_.begin(), inhibitors_.end(), j))
      throw std::invalid_argument(
          "defective and inhibitor sets must be disjoint");
}

bool Population::is_defective(std::int64_t item) const {
  return std::binary_search(defectives_.begin(), defectives_.end(), item);
}

bool Population::is_inhibitor(std::int64_t item) const {
  return std::binary_search(inhibitors_.begin(), inhibitors_.end(), item);
}

PoolingDesign::PoolingDesign(std::int64_t tests, std::int64_t items)
    : tests_(tests), items_(items), words_per_row_((items + 63) / 64) {
  if (tests < 0 || items < 1)
    throw std::invalid_argument("design dimensions invalid");
  words_.assign(static_cast<std::size_t>(tests_ * words_per_row_), 0);
}

PoolingDesign PoolingDesign::from_rows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw std::invalid_argument("from_rows needs >= 1 row");
  const auto n = static_cast<std::int64_t>(rows.front().size());
  PoolingDesign d(static_cast<std::int64_t>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<std::int64_t>(rows[i].size()) != n)
      throw std::invalid_argument("ragged rows");
    for (std::int64_t j = 0; j < n; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1)
        throw std::invalid_argument("matrix entries must be 0/1");
      if (rows[i][j]) d.set_entry(static_cast<std::int64_t>(i), j, true);
    }
  }
  return d;
}

void PoolingDesign::set_entry(std::int64_t test, std::int64_t item,
                              bool value) {
  if (test < 0 || test >= tests_ || item < 0 || item >= items_)
    throw std::out_of_range("design entry out of range");
  auto& w = words_[static_cast<std::size_t>(test * words_per_row_ +
                                            (item >> 6))];
  const std::uint64_t bit = 1ULL << (item & 63);
  if (value)
    w |= bit;
  else
    w &= ~bit;
}

std::vector<std::int64_t> PoolingDesign::row_items(std::int64_t test) const {
  std::vector<std::int64_t> out;
  auto r = row(test);
  for (std::int64_t w = 0; w < words_per_row_; ++w) {
    std::uint64_t bits = r[static_cast<std::size_t>(w)];
    while (bits) {
      out.push_back(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<std::uint64_t> item_mask(std::int64_t n,
                                     const std::vector<std::int64_t>& items) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>((n + 63) / 64), 0);
  for (std::int64_t j : items) {
    if (j < 0 || j >= n) throw std::out_of_range("item index out of range");
    mask[static_cast<std::size_t>(j >> 6)] |= 1ULL << (j & 63);
  }
  return mask;
}

OutcomeVector simulate_outcomes(const PoolingDesign& design,
                                const Population& truth) {
  if (design.items() != truth.n())
    throw std::invalid_argument("design and population sizes differ");
  const auto def = item_mask(truth.n(), truth.defectives());
  const auto inh = item_mask(truth.n(), truth.inhibitors());
  OutcomeVector y(static_cast<std::size_t>(design.tests()), 0);
  const std::int64_t wpr = design.words_per_row();
  for (std::int64_t i = 0; i < design.tests(); ++i) {
    auto r = design.row(i);
    bool any_defective = false;
    bool any_inhibitor = false;
    for (std::int64_t w = 0; w < wpr; ++w) {
      const std::uint64_t bits = r[static_cast<std::size_t>(w)];
      any_defective |= (bits & def[static_cast<std::size_t>(w)]) != 0;
      any_inhibitor |= (bits & inh[static_cast<std::size_t>(w)]) != 0;
    }
    y[static_cast<std::size_t>(i)] =
        (any_defective && !any_inhibitor) ? 1 : 0;
  }
  return y;
}

ItemStats item_stats(const PoolingDesign& design, const OutcomeVector& outcomes,
                     std::int64_t item) {
  if (item < 0 || item >= design.items())
    throw std::out_of_range("item index out of range");
  if (static_cast<std::int64_t>(outcomes.size()) != design.tests())
    throw std::invalid_argument("outcome length does not match design");
  ItemStats s{item, 0, 0};
  for (std::int64_t i = 0; i < design.tests(); ++i) {
    if (design.entry(i, item)) {
      ++s.t_count;
      s.s_count += outcomes[static_cast<std::size_t>(i)];
    }
  }
  return s;
}

std::vector<ItemStats> all_item_stats(const PoolingDesign& design,
                                      const OutcomeVector& outcomes) {
  if (static_cast<std::int64_t>(outcomes.size()) != design.tests())
    throw std::invalid_argument("outcome length does not match design");
  std::vector<ItemStats> stats(static_cast<std::size_t>(design.items()));
  for (std::int64_t j = 0; j < design.items(); ++j) stats[j].item = j;
  const std::int64_t wpr = design.words_per_row();
  for (std::int64_t i = 0; i < design.tests(); ++i) {
    auto r = design.row(i);
    const std::int64_t positive = outcomes[static_cast<std::size_t>(i)];
    for (std::int64_t w = 0; w < wpr; ++w) {
      std::uint64_t bits = r[static_cast<std::size_t>(w)];
      while (bits) {
        const std::int64_t j = w * 64 + std::countr_zero(bits);
        ++stats[static_cast<std::size_t>(j)].t_count;
        stats[static_cast<std::size_t>(j)].s_count += positive;
        bits &= bits - 1;
      }
    }
  }
  return stats;
}

}  // namespace gti
