#include "twistlab/report.hpp"

#include <atomic>
#include <thread>

namespace twistlab {

namespace {
std::atomic<unsigned> g_workers{1};

bool columns_equal(const LinMap& a, const LinMap& b, std::size_t j) {
  const LinMap::Column& ca = a.column(j);
  const LinMap::Column& cb = b.column(j);
  if (ca.size() != cb.size()) return false;
  for (std::size_t k = 0; k < ca.size(); ++k)
    if (ca[k].row != cb[k].row || ca[k].value != cb[k].value) return false;
  return true;
}
} // namespace

void set_worker_count(unsigned n) { g_workers.store(n == 0 ? 1 : n); }
unsigned worker_count() { return g_workers.load(); }

AxiomCheck check_map_equal(const std::string& axiom, const LinMap& lhs,
                           const LinMap& rhs) {
  if (!(lhs.field() == rhs.field()))
    fail(ErrorCode::invalid_argument, "field mismatch in check '" + axiom + "'");
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    fail(ErrorCode::invalid_argument,
         "shape mismatch in check '" + axiom + "'");

  const std::size_t cols = lhs.cols();
  std::size_t first_bad = cols;
  std::size_t bad_count = 0;

  unsigned jobs = worker_count();
  if (jobs <= 1 || cols < 2 * jobs) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!columns_equal(lhs, rhs, j)) {
        if (first_bad == cols) first_bad = j;
        ++bad_count;
      }
    }
  } else {
    std::vector<std::size_t> firsts(jobs, cols);
    std::vector<std::size_t> counts(jobs, 0);
    std::vector<std::thread> pool;
    std::size_t chunk = (cols + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(cols, begin + chunk);
        for (std::size_t j = begin; j < end; ++j) {
          if (!columns_equal(lhs, rhs, j)) {
            if (firsts[w] == cols) firsts[w] = j;
            ++counts[w];
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (unsigned w = 0; w < jobs; ++w) {
      bad_count += counts[w];
      first_bad = std::min(first_bad, firsts[w]);
    }
  }

  AxiomCheck out;
  out.axiom = axiom;
  out.pass = bad_count == 0;
  if (!out.pass) {
    Witness wit;
    // scalar slots (dimension-1 factors) carry no information; drop them so
    // the tuple names exactly the basis elements fed in
    std::vector<std::size_t> full = split_index(first_bad, lhs.dom_factors());
    for (std::size_t i = 0; i < full.size(); ++i)
      if (lhs.dom_factors()[i] > 1) wit.tuple.push_back(full[i]);
    wit.lhs = lhs.dense_column(first_bad);
    wit.rhs = rhs.dense_column(first_bad);
    wit.mismatch_count = bad_count;
    out.witness = std::move(wit);
  }
  return out;
}

std::string Report::summary() const {
  std::string out;
  for (const AxiomCheck& c : checks) {
    out += c.pass ? "pass " : "FAIL ";
    out += c.axiom;
    if (!c.pass && c.witness) {
      out += "  witness (";
      for (std::size_t i = 0; i < c.witness->tuple.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c.witness->tuple[i]);
      }
      out += ") with " + std::to_string(c.witness->mismatch_count) +
             " mismatching basis input(s)";
    }
    out += "\n";
  }
  return out;
}

} // namespace twistlab
