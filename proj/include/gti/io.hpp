#pragma once

#include <iosfwd>
#include <string>

#include "gti/model.hpp"

namespace gti {

// Text formats. Matrix: first line "T n", then T lines of n space-separated
// 0/1 entries. Outcomes: T lines of one 0/1 each. Population: line 1 "n",
// line 2 defective indices, line 3 inhibitor indices (possibly empty).
// Item indices are ONE-based in files; the in-memory API is zero-based.

void write_matrix(std::ostream& os, const PoolingDesign& design);
PoolingDesign read_matrix(std::istream& is);

void write_outcomes(std::ostream& os, const OutcomeVector& outcomes);
OutcomeVector read_outcomes(std::istream& is);

void write_population(std::ostream& os, const Population& pop);
Population read_population(std::istream& is);

void write_matrix_file(const std::string& path, const PoolingDesign& design);
PoolingDesign read_matrix_file(const std::string& path);
void write_outcomes_file(const std::string& path, const OutcomeVector& y);
OutcomeVector read_outcomes_file(const std::string& path);
void write_population_file(const std::string& path, const Population& pop);
Population read_population_file(const std::string& path);

}  // namespace gti
