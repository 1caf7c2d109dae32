// SPDX-License-Identifier: Apache-2.0

#include "acsia/conditions.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace acsia {

namespace {

// Signed sum of link phases; links are 1-based (rx, tx) to keep the tables
// readable against the usual phi_rt notation.
struct Term {
  int sign;
  int rx;
  int tx;
};

struct PhaseExpr {
  std::vector<Term> terms;

  double evaluate(const ChannelMatrix& ch) const {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.sign * ch.phase(t.rx - 1, t.tx - 1);
    return sum;
  }

  std::string text() const {
    std::string out;
    for (const auto& t : terms) {
      if (out.empty())
        out += t.sign < 0 ? "-" : "";
      else
        out += t.sign < 0 ? " - " : " + ";
      out += "phi" + std::to_string(t.rx) + std::to_string(t.tx);
    }
    return out;
  }
};

PhaseExpr cycle_expr(const PhaseCycle& c) {
  return {{{+1, c.plus[0].rx + 1, c.plus[0].tx + 1},
           {+1, c.plus[1].rx + 1, c.plus[1].tx + 1},
           {-1, c.minus[0].rx + 1, c.minus[0].tx + 1},
           {-1, c.minus[1].rx + 1, c.minus[1].tx + 1}}};
}

ConditionRecord evaluate(const ChannelMatrix& ch, std::string id, const PhaseExpr& expr,
                         Requirement req, const PhaseCycle* cycle = nullptr) {
  ConditionRecord rec;
  rec.id = std::move(id);
  rec.expression = expr.text();
  rec.phase_sum = expr.evaluate(ch);
  rec.requirement = req;
  rec.modulus = req == Requirement::SingularCycle ? kTwoPi : kPi;
  rec.distance = distance_to_multiple(rec.phase_sum, rec.modulus);
  switch (req) {
    case Requirement::NonZeroModPi: rec.pass = rec.distance > kPhaseTolerance; break;
    case Requirement::ZeroModPi: rec.pass = rec.distance <= kPhaseTolerance; break;
    case Requirement::SingularCycle: {
      rec.magnitude_ratio = cycle->magnitude_ratio(ch);
      rec.pass = std::abs(*rec.magnitude_ratio - 1.0) <= kRatioTolerance &&
                 rec.distance <= kPhaseTolerance;
      break;
    }
  }
  return rec;
}

void require_shape(const ChannelMatrix& ch, int rx, int tx, ConditionSet set) {
  if (ch.num_rx() != rx || ch.num_tx() != tx)
    throw std::invalid_argument(to_string(set) + " conditions need a " + std::to_string(rx) + "x" +
                                std::to_string(tx) + " channel, got " + std::to_string(ch.num_rx()) +
                                "x" + std::to_string(ch.num_tx()));
}

}  // namespace

std::string to_string(ConditionSet set) {
  switch (set) {
    case ConditionSet::PhaseAlignment: return "phase-align";
    case ConditionSet::AcsIc3: return "acs-ic3";
    case ConditionSet::Singular: return "singular";
    case ConditionSet::XChannel: return "x-channel";
    case ConditionSet::Uplinks: return "uplinks";
  }
  return "unknown";
}

bool ConditionReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

bool ConditionReport::any_pass() const {
  for (const auto& r : records)
    if (r.pass) return true;
  return false;
}

std::vector<std::string> ConditionReport::failed() const {
  std::vector<std::string> ids;
  for (const auto& r : records)
    if (!r.pass) ids.push_back(r.id);
  return ids;
}

ConditionReport check_conditions(const ChannelMatrix& ch, ConditionSet set) {
  ConditionReport report{set, {}};
  auto& out = report.records;
  switch (set) {
    case ConditionSet::PhaseAlignment: {
      require_shape(ch, 3, 3, set);
      const PhaseExpr cycle{{{+1, 3, 2}, {+1, 2, 1}, {+1, 1, 3}, {-1, 1, 2}, {-1, 2, 3}, {-1, 3, 1}}};
      out.push_back(evaluate(ch, "phase-align/cycle", cycle, Requirement::ZeroModPi));
      const PhaseExpr rx1{{{+1, 2, 1}, {-1, 2, 3}, {+1, 1, 3}, {-1, 1, 1}}};
      const PhaseExpr rx2{{{+1, 2, 2}, {+1, 1, 3}, {-1, 1, 2}, {-1, 2, 3}}};
      const PhaseExpr rx3{{{+1, 3, 3}, {+1, 2, 1}, {-1, 2, 3}, {-1, 3, 1}}};
      out.push_back(evaluate(ch, "phase-align/rx1", rx1, Requirement::NonZeroModPi));
      out.push_back(evaluate(ch, "phase-align/rx2", rx2, Requirement::NonZeroModPi));
      out.push_back(evaluate(ch, "phase-align/rx3", rx3, Requirement::NonZeroModPi));
      break;
    }
    case ConditionSet::AcsIc3:
      require_shape(ch, 3, 3, set);
      for (int i = 1; i <= 6; ++i)
        out.push_back(evaluate(ch, "acs-ic3/" + std::to_string(i), cycle_expr(acs_cycle(i)),
                               Requirement::NonZeroModPi));
      break;
    case ConditionSet::Singular:
      require_shape(ch, 3, 3, set);
      for (int i = 1; i <= 6; ++i)
        out.push_back(evaluate(ch, "singular/" + std::to_string(i), cycle_expr(acs_cycle(i)),
                               Requirement::SingularCycle, &acs_cycle(i)));
      break;
    case ConditionSet::XChannel: {
      require_shape(ch, 2, 2, set);
      const PhaseExpr e{{{+1, 1, 1}, {+1, 2, 2}, {-1, 2, 1}, {-1, 1, 2}}};
      out.push_back(evaluate(ch, "x-channel/1", e, Requirement::NonZeroModPi));
      break;
    }
    case ConditionSet::Uplinks: {
      require_shape(ch, 2, 4, set);
      const PhaseExpr e1{{{+1, 1, 1}, {+1, 2, 2}, {-1, 2, 1}, {-1, 1, 2}}};
      const PhaseExpr e2{{{+1, 2, 3}, {+1, 1, 4}, {-1, 1, 3}, {-1, 2, 4}}};
      out.push_back(evaluate(ch, "uplinks/1", e1, Requirement::NonZeroModPi));
      out.push_back(evaluate(ch, "uplinks/2", e2, Requirement::NonZeroModPi));
      break;
    }
  }
  return report;
}

}  // namespace acsia
