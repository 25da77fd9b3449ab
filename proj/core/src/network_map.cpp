#include "pncsim/network_map.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace pncsim {

namespace {

bool is_power_of_two(unsigned v) { return v >= 1 && (v & (v - 1)) == 0; }

}  // namespace

NetworkMap::NetworkMap(unsigned order, std::vector<unsigned> table)
    : order_(order), table_(std::move(table)) {
  if (order_ < 2) throw std::invalid_argument("map order must be >= 2");
  if (table_.size() != std::size_t{order_} * order_) {
    throw std::invalid_argument("map table must have order^2 entries");
  }
  for (unsigned v : table_) {
    if (v >= order_) throw std::invalid_argument("map output outside Z_M");
  }
  build_inverse();
}

void NetworkMap::build_inverse() {
  if (violation().has_value()) return;
  inv_second_.assign(std::size_t{order_} * order_, 0);
  for (unsigned a = 0; a < order_; ++a) {
    for (unsigned b = 0; b < order_; ++b) {
      inv_second_[a * order_ + map(a, b)] = b;
    }
  }
}

NetworkMap NetworkMap::xor_map(unsigned order) {
  if (!is_power_of_two(order) || order < 2) {
    throw std::invalid_argument("XOR map order must be a power of two >= 2");
  }
  std::vector<unsigned> table(std::size_t{order} * order);
  for (unsigned a = 0; a < order; ++a) {
    for (unsigned b = 0; b < order; ++b) table[a * order + b] = a ^ b;
  }
  return NetworkMap(order, std::move(table));
}

NetworkMap NetworkMap::from_table(unsigned order, std::vector<unsigned> table) {
  return NetworkMap(order, std::move(table));
}

std::optional<std::string> NetworkMap::violation() const {
  for (unsigned a = 0; a < order_; ++a) {
    std::vector<bool> seen(order_, false);
    for (unsigned b = 0; b < order_; ++b) {
      const unsigned v = map(a, b);
      if (seen[v]) {
        return "row " + std::to_string(a) + " repeats output " + std::to_string(v);
      }
      seen[v] = true;
    }
  }
  for (unsigned b = 0; b < order_; ++b) {
    std::vector<bool> seen(order_, false);
    for (unsigned a = 0; a < order_; ++a) {
      const unsigned v = map(a, b);
      if (seen[v]) {
        return "column " + std::to_string(b) + " repeats output " + std::to_string(v);
      }
      seen[v] = true;
    }
  }
  return std::nullopt;
}

std::vector<Cluster> NetworkMap::clusters() const {
  if (auto why = violation()) {
    throw std::logic_error("clusters() requires a valid map: " + *why);
  }
  std::vector<Cluster> out(order_);
  for (unsigned v = 0; v < order_; ++v) out[v].ncs = v;
  for (unsigned a = 0; a < order_; ++a) {
    for (unsigned b = 0; b < order_; ++b) {
      out[map(a, b)].members.emplace_back(a, b);
    }
  }
  return out;  // (a, b) loop order is already lexicographic
}

unsigned NetworkMap::invert_second(unsigned s_a, unsigned ncs) const {
  if (inv_second_.empty()) {
    throw std::logic_error("invert_second() requires a valid map");
  }
  return inv_second_[s_a * order_ + ncs];
}

NetworkMap NetworkMap::load(std::istream& in) {
  unsigned order = 0;
  if (!(in >> order)) throw std::runtime_error("map file: missing order line");
  if (order < 2 || order > 1024) {
    throw std::runtime_error("map file: implausible order " + std::to_string(order));
  }
  std::vector<unsigned> table;
  table.reserve(std::size_t{order} * order);
  for (std::size_t k = 0; k < std::size_t{order} * order; ++k) {
    long long v = -1;
    if (!(in >> v)) {
      throw std::runtime_error("map file: expected " + std::to_string(order * order) +
                               " entries, got " + std::to_string(k));
    }
    if (v < 0 || v >= static_cast<long long>(order)) {
      throw std::runtime_error("map file: entry " + std::to_string(v) + " outside Z_" +
                               std::to_string(order));
    }
    table.push_back(static_cast<unsigned>(v));
  }
  NetworkMap m(order, std::move(table));
  if (auto why = m.violation()) {
    throw std::runtime_error("map file violates the exclusive law: " + *why);
  }
  return m;
}

NetworkMap NetworkMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  return load(in);
}

}  // namespace pncsim
