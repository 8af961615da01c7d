#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "trifind/errors.hpp"

namespace trifind {

// Per-phase accumulator of charged quantum cost, plus the classical probe
// count of the emulation (diagnostic only, never part of the charged total).
class QueryLedger {
 public:
  using Charges = std::map<std::string, double, std::less<>>;

  void charge(std::string_view phase, double amount) {
    require(std::isfinite(amount) && amount >= 0.0,
            "ledger charge must be finite and nonnegative");
    auto it = charged_.find(phase);
    if (it == charged_.end()) {
      charged_.emplace(std::string(phase), amount);
    } else {
      it->second += amount;
    }
  }

  // Registers a phase with zero charge so snapshots have a stable shape.
  void declare(std::string_view phase) { charge(phase, 0.0); }

  void add_probes(std::uint64_t count) { raw_probes_ += count; }

  // Folds another ledger into this one; phases add, probes add.
  void merge(const QueryLedger& other) {
    for (const auto& [phase, amount] : other.charged_) charge(phase, amount);
    raw_probes_ += other.raw_probes_;
  }

  [[nodiscard]] double charged(std::string_view phase) const {
    auto it = charged_.find(phase);
    return it == charged_.end() ? 0.0 : it->second;
  }

  [[nodiscard]] double total() const {
    double sum = 0.0;
    for (const auto& [phase, amount] : charged_) sum += amount;
    return sum;
  }

  [[nodiscard]] const Charges& charges() const { return charged_; }
  [[nodiscard]] std::uint64_t raw_probes() const { return raw_probes_; }

 private:
  Charges charged_;
  std::uint64_t raw_probes_ = 0;
};

}  // namespace trifind
