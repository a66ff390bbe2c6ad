#ifndef TWISTLAB_REPORT_HPP
#define TWISTLAB_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "twistlab/linmap.hpp"

namespace twistlab {

/// First failing basis tuple of a map equality, with both evaluations and
/// the total number of differing basis inputs.
struct Witness {
  std::vector<std::size_t> tuple; // multi-index over the domain factors
  std::vector<Scalar> lhs;
  std::vector<Scalar> rhs;
  std::size_t mismatch_count = 0;
};

struct AxiomCheck {
  std::string axiom;
  bool pass = false;
  std::optional<Witness> witness;
};

/// Verdict of a certification suite: pass iff every named axiom passed.
/// Failures carry a re-evaluable witness (the recorded tuple, fed back
/// through the maps, reproduces the recorded mismatch).
struct Report {
  std::vector<AxiomCheck> checks;

  bool ok() const {
    for (const AxiomCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const AxiomCheck* find(const std::string& axiom) const {
    for (const AxiomCheck& c : checks)
      if (c.axiom == axiom) return &c;
    return nullptr;
  }

  void append(Report other) {
    for (AxiomCheck& c : other.checks) checks.push_back(std::move(c));
  }

  std::string summary() const;
};

/// Worker count used when scanning basis tuples for witnesses. Results are
/// deterministic for any value: aggregation keeps the lexicographically
/// smallest witness.
void set_worker_count(unsigned n);
unsigned worker_count();

/// Columnwise comparison of two maps of equal shape; witnesses use the
/// lhs map's domain factors as the tuple shape.
AxiomCheck check_map_equal(const std::string& axiom, const LinMap& lhs,
                           const LinMap& rhs);

} // namespace twistlab

#endif
