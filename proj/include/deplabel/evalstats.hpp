#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deplabel/deptree.hpp"

namespace deplabel::evalstats {

// Attachment scores in percent. las <= uas always holds.
struct Metrics {
  double uas = 0;
  double las = 0;
  std::optional<double> tag_accuracy;
  long long token_count = 0;
};

// UAS = % tokens with the gold head, LAS = % with gold head and deprel.
// All tokens count by default; exclude_punct skips tokens whose GOLD deprel
// is "punct". Corpora must be aligned sentence-by-sentence.
Metrics uas_las(const std::vector<DepTree>& gold, const std::vector<DepTree>& pred,
                bool exclude_punct = false);

// % of test label tokens whose label occurs anywhere in train. Labels are
// compared as full strings; callers join multi-component tuples themselves.
double label_coverage(const std::vector<std::string>& train,
                      const std::vector<std::string>& test);

struct TTest {
  double t = 0;
  double p = 1;
  long long df = 0;
  bool degenerate = false;  // zero variance of the differences; t/p unusable
};

// Two-sided paired t-test over aligned score vectors (|a| = |b| >= 2):
// t = mean(d) / (sd(d) / sqrt(k)) with k-1 degrees of freedom.
TTest paired_ttest(const std::vector<double>& a, const std::vector<double>& b);

// % of sentences with at least one crossing arc pair, root arcs included.
double nonprojective_rate(const std::vector<DepTree>& treebank);

// Two-sided p-value of the t distribution, via the regularized incomplete
// beta function (continued fraction; accurate to well past 6 significant
// digits).
double student_t_two_sided_p(double t, double df);
double regularized_incomplete_beta(double a, double b, double x);

// Mean-UAS difference table: the reference column shows its mean, every
// other cell the difference against it, all at 2 decimals; absent cells stay
// blank.
struct DiffTable {
  std::vector<std::string> sizes;      // row order
  std::vector<std::string> encodings;  // column order, reference first
  std::string reference;
  // cells[row][col]: formatted value or "" when missing
  std::vector<std::vector<std::string>> cells;

  std::string to_tsv() const;
  std::string to_markdown() const;
};

DiffTable diff_table(const std::map<std::pair<std::string, std::string>, double>& mean_uas,
                     const std::string& reference,
                     const std::vector<std::string>& size_order,
                     const std::vector<std::string>& encoding_order);

// Shared 2-decimal formatting for tables.
std::string format2(double value);

}  // namespace deplabel::evalstats
