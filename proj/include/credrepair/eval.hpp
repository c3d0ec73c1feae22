#pragma once

#include <optional>
#include <vector>

namespace credrepair {

// Binary credibility report; positive class = credible.
struct CredReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
};

struct PerClassStats {
  bool present_in_gold = false;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

struct RepairReport {
  double macro_f1 = 0.0;  // mean over classes present in gold
  double micro_f1 = 0.0;  // pooled counts
  double mrr = 0.0;       // over instances with a real gold relation
  std::vector<PerClassStats> per_class;
  // Fraction of CANNOT_REPAIR-gold instances ranking it first; reported
  // separately from MRR.
  std::optional<double> cannot_repair_top1;
  long n_ranked = 0;
};

CredReport binary_f1(const std::vector<bool>& preds, const std::vector<bool>& golds);

RepairReport multiclass_f1(const std::vector<int>& preds, const std::vector<int>& golds,
                           int num_classes);

// rankings[i] lists class indices in descending score order. Instances
// whose gold is cannot_repair_index are excluded from the mean and scored
// separately (top-1 rate).
double mrr(const std::vector<std::vector<int>>& rankings, const std::vector<int>& golds,
           int cannot_repair_index = -1);

// Full repair report: multiclass F1 over argmax predictions plus MRR and
// the cannot-repair top-1 rate from the rankings.
RepairReport repair_report(const std::vector<int>& preds, const std::vector<int>& golds,
                           const std::vector<std::vector<int>>& rankings, int num_classes,
                           int cannot_repair_index);

}  // namespace credrepair
