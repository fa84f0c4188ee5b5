#include "polar16/report.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include "polar16/fast16.hpp"

namespace polar16 {

std::vector<int> measured_phase_costs(const Kernel& k) {
  std::unique_ptr<Fast16Base> proc;
  if (k.name == "k1" && k.matrix == k1().matrix)
    proc = std::make_unique<Fast16K1>();
  else if (k.name == "k2" && k.matrix == k2().matrix)
    proc = std::make_unique<Fast16K2>();
  else
    return {};
  std::vector<double> y(16);
  for (int i = 0; i < 16; ++i) y[static_cast<size_t>(i)] = (i % 2 ? -1.0 : 1.0) * (1.0 + i);
  proc->reset(y);
  for (int phase = 0; phase < 16; ++phase) {
    const double s = proc->next_llr();
    proc->decide(s < 0.0 ? 1 : 0);
  }
  const auto report = proc->op_report();
  std::vector<int> costs(16);
  for (int phase = 0; phase < 16; ++phase)
    costs[static_cast<size_t>(phase)] = static_cast<int>(report[static_cast<size_t>(phase)].total());
  return costs;
}

std::string analyze_report_text(const Kernel& k) {
  const WindowPlan plan = window_plan(k);
  const KernelProfile prof = profile(k);
  const auto costs = measured_phase_costs(k);

  std::ostringstream out;
  out << "kernel " << k.name << ": l = " << k.l << ", t = " << k.t << "\n";
  out << "phase  u_phi                    D_phi          h    cost\n";
  char buf[160];
  for (int phase = 0; phase < k.l; ++phase) {
    const std::string expr = constraint_text(phase, plan.pure_v[static_cast<size_t>(phase)]);
    const std::string win = window_text(plan.windows[static_cast<size_t>(phase)]);
    if (costs.empty())
      std::snprintf(buf, sizeof buf, "%-5d  %-23s  %-13s  %-3d  -\n", phase, expr.c_str(),
                    win.c_str(), plan.h[static_cast<size_t>(phase)]);
    else
      std::snprintf(buf, sizeof buf, "%-5d  %-23s  %-13s  %-3d  %d\n", phase, expr.c_str(),
                    win.c_str(), plan.h[static_cast<size_t>(phase)],
                    costs[static_cast<size_t>(phase)]);
    out << buf;
  }
  out << "max |D| = " << plan.max_window;
  if (!costs.empty())
    out << ", total cost = " << std::accumulate(costs.begin(), costs.end(), 0);
  out << "\n";
  out << "partial distances:";
  for (int d : prof.partial_distances) out << " " << d;
  out << "\n";
  std::snprintf(buf, sizeof buf, "polarization rate E = %.6f\n", prof.polarization_rate);
  out << buf;
  if (k.name == "k1")
    std::snprintf(buf, sizeof buf, "BEC scaling exponent mu = %.3f (stored metadata)\n",
                  kScalingExponentK1);
  else if (k.name == "k2")
    std::snprintf(buf, sizeof buf, "BEC scaling exponent mu = %.3f (stored metadata)\n",
                  kScalingExponentK2);
  else
    buf[0] = '\0';
  out << buf;
  return out.str();
}

std::string analyze_report_csv(const Kernel& k) {
  const WindowPlan plan = window_plan(k);
  const auto costs = measured_phase_costs(k);
  std::ostringstream out;
  out << "phase,u_phi,window,h,cost\n";
  for (int phase = 0; phase < k.l; ++phase) {
    out << phase << "," << constraint_text(phase, plan.pure_v[static_cast<size_t>(phase)]) << ","
        << window_text(plan.windows[static_cast<size_t>(phase)]) << ","
        << plan.h[static_cast<size_t>(phase)] << ",";
    if (!costs.empty()) out << costs[static_cast<size_t>(phase)];
    out << "\n";
  }
  return out.str();
}

}  // namespace polar16
