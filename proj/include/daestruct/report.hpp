#pragma once

#include "daestruct/index.hpp"
#include "daestruct/membership.hpp"
#include "daestruct/reduce.hpp"

#include <string>

namespace daestruct {

/// Witness file: JSON object mapping derivative-variable names ("x1", "x1'",
/// parameter names) to rational strings "p/q".
Witness read_witness_json(const DAESystem& s, const std::string& text);
std::string write_witness_json(const DAESystem& s, const Witness& w);

/// Deterministic JSON: sorted keys, rationals as "p/q" strings, schema: 1.
std::string analyze_report_json(const DAESystem& s, const IndexReport& rep);
std::string analyze_report_text(const DAESystem& s, const IndexReport& rep);

std::string jacobi_report_json(const DAESystem& s);
std::string jacobi_report_text(const DAESystem& s);

std::string membership_report_json(const DAESystem& s, const DiffPoly& f,
                                   const MembershipBounds& bounds, bool searched,
                                   const std::optional<Representation>& rep);
std::string membership_report_text(const DAESystem& s, const DiffPoly& f,
                                   const MembershipBounds& bounds, bool searched,
                                   const std::optional<Representation>& rep);

/// CSV columns: t, x_1..x_n, x_1'..x_n', residual.
std::string trajectory_csv(const DAESystem& s, const Trajectory& traj);

} // namespace daestruct
