#include "credrepair/eval.hpp"

#include <algorithm>
#include <set>

#include "credrepair/error.hpp"

namespace credrepair {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double f1_from(double precision, double recall) {
  return precision + recall == 0.0 ? 0.0
                                   : 2.0 * precision * recall / (precision + recall);
}

}  // namespace

CredReport binary_f1(const std::vector<bool>& preds, const std::vector<bool>& golds) {
  if (preds.size() != golds.size()) {
    throw ValidationError("predictions and golds differ in length");
  }
  CredReport report;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] && golds[i]) {
      ++report.tp;
    } else if (preds[i] && !golds[i]) {
      ++report.fp;
    } else if (!preds[i] && golds[i]) {
      ++report.fn;
    } else {
      ++report.tn;
    }
  }
  report.precision = safe_div(report.tp, report.tp + report.fp);
  report.recall = safe_div(report.tp, report.tp + report.fn);
  report.f1 = f1_from(report.precision, report.recall);
  return report;
}

RepairReport multiclass_f1(const std::vector<int>& preds, const std::vector<int>& golds,
                           int num_classes) {
  if (preds.size() != golds.size()) {
    throw ValidationError("predictions and golds differ in length");
  }
  RepairReport report;
  report.per_class.resize(num_classes);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    int p = preds[i];
    int g = golds[i];
    if (p < 0 || p >= num_classes || g < 0 || g >= num_classes) {
      throw ValidationError("class index out of range");
    }
    report.per_class[g].present_in_gold = true;
    if (p == g) {
      ++report.per_class[g].tp;
    } else {
      ++report.per_class[p].fp;
      ++report.per_class[g].fn;
    }
  }
  long pooled_tp = 0;
  long pooled_fp = 0;
  long pooled_fn = 0;
  double macro_sum = 0.0;
  int macro_count = 0;
  for (auto& stats : report.per_class) {
    stats.precision = safe_div(stats.tp, stats.tp + stats.fp);
    stats.recall = safe_div(stats.tp, stats.tp + stats.fn);
    stats.f1 = f1_from(stats.precision, stats.recall);
    pooled_tp += stats.tp;
    pooled_fp += stats.fp;
    pooled_fn += stats.fn;
    if (stats.present_in_gold) {
      macro_sum += stats.f1;
      ++macro_count;
    }
  }
  report.macro_f1 = macro_count == 0 ? 0.0 : macro_sum / macro_count;
  double micro_p = safe_div(pooled_tp, pooled_tp + pooled_fp);
  double micro_r = safe_div(pooled_tp, pooled_tp + pooled_fn);
  report.micro_f1 = f1_from(micro_p, micro_r);
  return report;
}

double mrr(const std::vector<std::vector<int>>& rankings, const std::vector<int>& golds,
           int cannot_repair_index) {
  if (rankings.size() != golds.size()) {
    throw ValidationError("rankings and golds differ in length");
  }
  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    if (golds[i] == cannot_repair_index) continue;
    auto it = std::find(rankings[i].begin(), rankings[i].end(), golds[i]);
    if (it == rankings[i].end()) {
      throw ValidationError("gold class missing from ranking");
    }
    double rank = static_cast<double>(it - rankings[i].begin()) + 1.0;
    sum += 1.0 / rank;
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

RepairReport repair_report(const std::vector<int>& preds, const std::vector<int>& golds,
                           const std::vector<std::vector<int>>& rankings, int num_classes,
                           int cannot_repair_index) {
  RepairReport report = multiclass_f1(preds, golds, num_classes);
  report.mrr = mrr(rankings, golds, cannot_repair_index);
  long ranked = 0;
  long cannot_total = 0;
  long cannot_top1 = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (golds[i] == cannot_repair_index) {
      ++cannot_total;
      if (!rankings[i].empty() && rankings[i].front() == cannot_repair_index) {
        ++cannot_top1;
      }
    } else {
      ++ranked;
    }
  }
  report.n_ranked = ranked;
  if (cannot_total > 0) {
    report.cannot_repair_top1 =
        static_cast<double>(cannot_top1) / static_cast<double>(cannot_total);
  }
  return report;
}

}  // namespace credrepair
