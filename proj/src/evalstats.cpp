#include "deplabel/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace deplabel::evalstats {

Metrics uas_las(const std::vector<DepTree>& gold, const std::vector<DepTree>& pred,
                bool exclude_punct) {
  if (gold.size() != pred.size())
    throw std::invalid_argument("gold/predicted corpus sizes differ");
  long long total = 0, head_ok = 0, both_ok = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].n != pred[s].n)
      throw std::invalid_argument("sentence length mismatch at sentence " + std::to_string(s));
    for (int i = 1; i <= gold[s].n; ++i) {
      if (exclude_punct && gold[s].deprels[i] == "punct") continue;
      ++total;
      if (gold[s].heads[i] == pred[s].heads[i]) {
        ++head_ok;
        if (gold[s].deprels[i] == pred[s].deprels[i]) ++both_ok;
      }
    }
  }
  Metrics m;
  m.token_count = total;
  if (total > 0) {
    m.uas = 100.0 * static_cast<double>(head_ok) / static_cast<double>(total);
    m.las = 100.0 * static_cast<double>(both_ok) / static_cast<double>(total);
  }
  return m;
}

double label_coverage(const std::vector<std::string>& train,
                      const std::vector<std::string>& test) {
  if (test.empty()) throw std::invalid_argument("empty test label set");
  std::unordered_set<std::string> inventory(train.begin(), train.end());
  long long covered = 0;
  for (const std::string& label : test)
    if (inventory.count(label)) ++covered;
  return 100.0 * static_cast<double>(covered) / static_cast<double>(test.size());
}

TTest paired_ttest(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired t-test needs aligned samples");
  const std::size_t k = a.size();
  if (k < 2) throw std::invalid_argument("paired t-test needs at least 2 pairs");
  double mean = 0;
  for (std::size_t i = 0; i < k; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(k);
  double ss = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  TTest out;
  out.df = static_cast<long long>(k) - 1;
  const double var = ss / static_cast<double>(k - 1);
  if (var <= 0.0) {
    out.degenerate = true;
    out.t = std::numeric_limits<double>::quiet_NaN();
    out.p = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.t = mean / std::sqrt(var / static_cast<double>(k));
  out.p = student_t_two_sided_p(out.t, static_cast<double>(out.df));
  return out;
}

double nonprojective_rate(const std::vector<DepTree>& treebank) {
  if (treebank.empty()) throw std::invalid_argument("empty treebank");
  long long nonproj = 0;
  for (const DepTree& tree : treebank)
    if (!is_projective(tree)) ++nonproj;
  return 100.0 * static_cast<double>(nonproj) / static_cast<double>(treebank.size());
}

namespace {

double log_gamma(double x) {
  // Lanczos approximation, g = 7.
  static const double coef[9] = {0.99999999999980993,  676.5203681218851,
                                 -1259.1392167224028,  771.32342877765313,
                                 -176.61502916214059,  12.507343278686905,
                                 -0.13857109526572012, 9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection formula.
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double acc = coef[0];
  for (int i = 1; i < 9; ++i) acc += coef[i] / (x + i);
  const double t = x + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(acc);
}

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  // Use the expansion on the side where it converges fast.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (df <= 0) throw std::invalid_argument("degrees of freedom must be positive");
  if (!std::isfinite(t)) return 0.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

std::string format2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

DiffTable diff_table(const std::map<std::pair<std::string, std::string>, double>& mean_uas,
                     const std::string& reference,
                     const std::vector<std::string>& size_order,
                     const std::vector<std::string>& encoding_order) {
  DiffTable table;
  table.reference = reference;
  table.sizes = size_order;
  table.encodings.push_back(reference);
  for (const std::string& enc : encoding_order)
    if (enc != reference) table.encodings.push_back(enc);

  for (const std::string& size : size_order) {
    auto ref_it = mean_uas.find({size, reference});
    if (ref_it == mean_uas.end())
      throw std::invalid_argument("reference encoding missing for size " + size);
    std::vector<std::string> row;
    row.push_back(format2(ref_it->second));
    for (std::size_t c = 1; c < table.encodings.size(); ++c) {
      auto it = mean_uas.find({size, table.encodings[c]});
      row.push_back(it == mean_uas.end() ? std::string()
                                         : format2(it->second - ref_it->second));
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

std::string DiffTable::to_tsv() const {
  std::string out = "size";
  for (const std::string& enc : encodings) out += "\t" + enc;
  out += '\n';
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    out += sizes[r];
    for (const std::string& cell : cells[r]) out += "\t" + cell;
    out += '\n';
  }
  return out;
}

std::string DiffTable::to_markdown() const {
  std::string out = "| size |";
  for (const std::string& enc : encodings) out += " " + enc + " |";
  out += "\n|---|";
  for (std::size_t c = 0; c < encodings.size(); ++c) out += "---|";
  out += '\n';
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    out += "| " + sizes[r] + " |";
    for (const std::string& cell : cells[r]) out += " " + cell + " |";
    out += '\n';
  }
  return out;
}

}  // namespace deplabel::evalstats
