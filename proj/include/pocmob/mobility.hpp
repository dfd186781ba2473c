#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pocmob/leg_analysis.hpp"

namespace pocmob {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceStep {
  int step = 0;  // 1..9 of the mobility flow
  std::string text;
  bool operator==(const TraceStep&) const = default;
};

struct MobilityReport {
  std::string name;
  int dof = 0;
  int total_joint_dof = 0;
  std::vector<LegPoc> legs;
  std::vector<LoopRank> loop_ranks;
  std::vector<PocMatrix> sub_pms;  // sub_pms[j] joins legs 1..j+2
  PocMatrix poc;
  std::string classification;
  std::string translation;  // "along P43"
  std::string rotation;     // "about R41, R42"
  std::vector<TraceStep> trace;

  bool rigid() const { return dof <= 0; }
  int loop_sum() const;
};

/// Folds the legs in input order, closing one loop per added leg.
/// Throws AnalysisError for invalid topologies; IndeterminateRelation (strict
/// policy) carries the loop index.
MobilityReport analyze_mechanism(const MechanismTopology& mech,
                                 RelationPolicy policy = RelationPolicy::GeneralPosition);

/// "3", or "rigid (F = 0)" for F <= 0.
std::string dof_label(const MobilityReport& r);

}  // namespace pocmob
