#include "gti/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gti {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for reading");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  return f;
}

}  // namespace

void write_matrix(std::ostream& os, const PoolingDesign& design) {
  os << design.tests() << ' ' << design.items() << '\n';
  for (std::int64_t i = 0; i < design.tests(); ++i) {
    for (std::int64_t j = 0; j < design.items(); ++j) {
      if (j) os << ' ';
      os << (design.entry(i, j) ? 1 : 0);
    }
    os << '\n';
  }
}

PoolingDesign read_matrix(std::istream& is) {
  std::int64_t t = 0, n = 0;
  if (!(is >> t >> n)) throw std::runtime_error("matrix header malformed");
  if (t < 0 || n < 1) throw std::runtime_error("matrix dimensions invalid");
  PoolingDesign design(t, n);
  for (std::int64_t i = 0; i < t; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      int v = 0;
      if (!(is >> v)) throw std::runtime_error("matrix body truncated");
      if (v != 0 && v != 1)
        throw std::runtime_error("matrix entries must be 0/1");
      if (v) design.set_entry(i, j, true);
    }
  }
  return design;
}

void write_outcomes(std::ostream& os, const OutcomeVector& outcomes) {
  for (auto y : outcomes) os << int(y) << '\n';
}

OutcomeVector read_outcomes(std::istream& is) {
  OutcomeVector y;
  int v = 0;
  while (is >> v) {
    if (v != 0 && v != 1) throw std::runtime_error("outcomes must be 0/1");
    y.push_back(static_cast<std::uint8_t>(v));
  }
  return y;
}

void write_population(std::ostream& os, const Population& pop) {
  os << pop.n() << '\n';
  bool first = true;
  for (auto j : pop.defectives()) {
    if (!first) os << ' ';
    os << j + 1;  // one-based on disk
    first = false;
  }
  os << '\n';
  first = true;
  for (auto j : pop.inhibitors()) {
    if (!first) os << ' ';
    os << j + 1;
    first = false;
  }
  os << '\n';
}

Population read_population(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("population header missing");
  std::int64_t n = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n)) throw std::runtime_error("population header malformed");
  }
  auto read_indices = [&](const char* what) {
    std::vector<std::int64_t> out;
    if (!std::getline(is, line))
      throw std::runtime_error(std::string("population ") + what +
                               " line missing");
    std::istringstream ss(line);
    std::int64_t v = 0;
    while (ss >> v) {
      if (v < 1 || v > n)
        throw std::runtime_error(std::string(what) +
                                 " index out of range (one-based)");
      out.push_back(v - 1);
    }
    return out;
  };
  auto defectives = read_indices("defective");
  auto inhibitors = read_indices("inhibitor");
  return Population(n, std::move(defectives), std::move(inhibitors));
}

void write_matrix_file(const std::string& path, const PoolingDesign& design) {
  auto f = open_out(path);
  write_matrix(f, design);
}

PoolingDesign read_matrix_file(const std::string& path) {
  auto f = open_in(path);
  return read_matrix(f);
}

void write_outcomes_file(const std::string& path, const OutcomeVector& y) {
  auto f = open_out(path);
  write_outcomes(f, y);
}

OutcomeVector read_outcomes_file(const std::string& path) {
  auto f = open_in(path);
  return read_outcomes(f);
}

void write_population_file(const std::string& path, const Population& pop) {
  auto f = open_out(path);
  write_population(f, pop);
}

Population read_population_file(const std::string& path) {
  auto f = open_in(path);
  return read_population(f);
}

}  // namespace gti
