#include "daestruct/report.hpp"

#include "daestruct/errors.hpp"
#include "daestruct/parser.hpp"

#include <json.hpp>

#include <sstream>

namespace daestruct {

namespace {

using nlohmann::json;

// "x1''" -> (x1, 2); arbitrary prime counts accepted.
std::pair<std::string, int> split_primes(const std::string& name) {
    size_t end = name.size();
    while (end > 0 && name[end - 1] == '\'') --end;
    return {name.substr(0, end), static_cast<int>(name.size() - end)};
}

std::string witness_var_name(const DAESystem& s, DerivVar v) {
    if (v.isParam) return s.param_name(v.index);
    std::string out = s.unknown_name(v.index);
    out.append(static_cast<size_t>(v.order), '\'');
    return out;
}

json ext_to_json(long v) {
    if (v == NEG_INF) return json("-inf");
    return json(v);
}

json ext_matrix_json(const std::vector<std::vector<long>>& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (long v : row) r.push_back(ext_to_json(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string ext_to_text(long v) {
    return v == NEG_INF ? "-inf" : std::to_string(v);
}

} // namespace

Witness read_witness_json(const DAESystem& s, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("witness file: ") + e.what(), 1, 1);
    }
    if (!j.is_object()) throw ParseError("witness file must be a JSON object", 1, 1);
    Witness w;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto [base, order] = split_primes(it.key());
        std::string valueText;
        if (it.value().is_string()) valueText = it.value().get<std::string>();
        else if (it.value().is_number_integer())
            valueText = std::to_string(it.value().get<long long>());
        else
            throw ParseError("witness value for '" + it.key() + "' must be a rational string", 1, 1);
        Rational value = rational_from_string(valueText);

        bool found = false;
        for (size_t i = 0; i < s.unknownNames.size(); ++i) {
            if (s.unknownNames[i] == base) {
                w.set(DerivVar::unknown(static_cast<int>(i), order), value);
                found = true;
                break;
            }
        }
        if (!found && order == 0) {
            for (size_t i = 0; i < s.paramNames.size(); ++i) {
                if (s.paramNames[i] == base) {
                    w.set(DerivVar::param(static_cast<int>(i)), value);
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw UndeclaredSymbol(it.key(), 1, 1);
    }
    return w;
}

std::string write_witness_json(const DAESystem& s, const Witness& w) {
    json j = json::object();
    for (const auto& [v, val] : w.values) j[witness_var_name(s, v)] = rational_to_string(val);
    return j.dump(2) + "\n";
}

std::string analyze_report_json(const DAESystem& s, const IndexReport& rep) {
    json j;
    j["schema"] = 1;
    j["system"] = {{"n", rep.n},
                   {"r", rep.r},
                   {"e", rep.e},
                   {"min_eps0", rep.minE0},
                   {"unknowns", s.unknownNames},
                   {"parameters", s.paramNames}};
    j["order_matrix"] = {{"E", ext_matrix_json(rep.orders.E)}, {"E0", ext_matrix_json(rep.orders.E0)}};
    j["mu"] = rep.mu.values;
    j["mu_row_index"] = rep.mu.i;
    j["sigma"] = rep.sigma;
    j["order"] = rep.order;
    j["hilbert_kolchin"] = {{"linear_coeff", rep.hk.linearCoeff},
                            {"constant", rep.hk.constantTerm},
                            {"regularity_bound", rep.hk.regularityBound}};
    j["trdeg"] = rep.trdeg;
    j["jacobi"] = {{"J_E", ext_to_json(rep.bounds.J_E)},
                   {"J_E0", rep.bounds.J_E0},
                   {"index_bound_rhs", rep.bounds.indexBoundRHS},
                   {"order_bound", ext_to_json(rep.bounds.orderBound)},
                   {"dual_cover_E0", {{"lambda", rep.dualE0.lambda}, {"phi", rep.dualE0.phi}}}};
    j["bound_checks"] = {{"sigma_plus_order", rep.sigma + rep.order},
                         {"index_bound_holds", rep.indexBoundHolds},
                         {"order_bound_holds", rep.orderBoundHolds},
                         {"mu_sandwich_holds", rep.muSandwichHolds}};
    j["i_independence"] = {{"holds", rep.iIndependence}, {"mu_rows", rep.muByI}};
    if (!rep.hypothesis.empty()) {
        json rows = json::array();
        for (const auto& h : rep.hypothesis)
            rows.push_back({{"k", h.k},
                            {"witness_rank", h.witnessRank},
                            {"generic_rank", h.genericRank},
                            {"agree", h.agree}});
        j["hypothesis"] = {{"per_k", rows}, {"all_agree", rep.hypothesisAgree}};
    }
    j["quasiregularity"] = {{"per_k", rep.quasiRegular}, {"all_pass", rep.quasiRegularAll}};
    j["oracle"] = {{"mode", rep.oracleDescription}, {"seed", rep.seed}, {"trials", rep.trials}};
    if (!rep.basePoint.empty()) {
        json point = json::object();
        for (const auto& [v, val] : rep.basePoint)
            point[witness_var_name(s, v)] = rational_to_string(val);
        j["witness_point"] = point;
    }
    return j.dump(2) + "\n";
}

std::string analyze_report_text(const DAESystem& s, const IndexReport& rep) {
    std::ostringstream out;
    out << "system: n=" << rep.n << " r=" << rep.r << " e=" << rep.e << " min_eps0=" << rep.minE0
        << "  unknowns:";
    for (const auto& name : s.unknownNames) out << " " << name;
    out << "\n";
    out << "E  =";
    for (const auto& row : rep.orders.E) {
        out << " [";
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << ext_to_text(row[j]);
        out << "]";
    }
    out << "\nE0 =";
    for (const auto& row : rep.orders.E0) {
        out << " [";
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << "]";
    }
    out << "\nmu =";
    for (long m : rep.mu.values) out << " " << m;
    out << "  (at i = " << rep.mu.i << ", oracle " << rep.mu.oracle << ")\n";
    out << "sigma = " << rep.sigma << "\n";
    out << "order = " << rep.order << "\n";
    out << "hilbert_kolchin: H(T) = " << rep.hk.linearCoeff << "*(T+1) + " << rep.hk.constantTerm
        << ", regularity bound " << rep.hk.regularityBound << "\n";
    out << "trdeg at i=" << rep.mu.i << ":";
    for (long v : rep.trdeg) out << " " << v;
    out << "\n";
    out << "jacobi: J(E) = " << ext_to_text(rep.bounds.J_E) << ", J(E0) = " << rep.bounds.J_E0
        << ", sigma + order <= " << rep.bounds.indexBoundRHS << "\n";
    out << "checks: index_bound " << (rep.indexBoundHolds ? "ok" : "VIOLATED") << ", order_bound "
        << (rep.orderBoundHolds ? "ok" : "VIOLATED") << ", mu_sandwich "
        << (rep.muSandwichHolds ? "ok" : "VIOLATED") << ", i_independence "
        << (rep.iIndependence ? "ok" : "VIOLATED") << "\n";
    if (!rep.hypothesis.empty()) {
        out << "hypothesis diagnostic:";
        for (const auto& h : rep.hypothesis)
            out << " k=" << h.k << ":" << h.witnessRank << "/" << h.genericRank
                << (h.agree ? "" : "(DISAGREE)");
        out << "\n";
    }
    out << "quasiregularity:";
    for (size_t k = 0; k < rep.quasiRegular.size(); ++k)
        out << " k=" << (k + 1) << ":" << (rep.quasiRegular[k] ? "ok" : "FAIL");
    out << "\n";
    return out.str();
}

std::string jacobi_report_json(const DAESystem& s) {
    JacobiBounds b = jacobi_bounds(s);
    OrderMatrix om = order_matrix(s);
    json j;
    j["schema"] = 1;
    j["J_E"] = ext_to_json(b.J_E);
    j["J_E0"] = b.J_E0;
    j["index_bound_rhs"] = b.indexBoundRHS;
    j["order_bound"] = ext_to_json(b.orderBound);
    j["E"] = ext_matrix_json(om.E);
    j["E0"] = ext_matrix_json(om.E0);
    DualCover cover = koenig_dual(ExtMatrix(om.E0));
    j["dual_cover_E0"] = {{"lambda", cover.lambda}, {"phi", cover.phi}, {"total", cover.total()}};
    return j.dump(2) + "\n";
}

std::string jacobi_report_text(const DAESystem& s) {
    JacobiBounds b = jacobi_bounds(s);
    DualCover cover = koenig_dual(ExtMatrix(order_matrix(s).E0));
    std::ostringstream out;
    out << "J(E)  = " << ext_to_text(b.J_E) << "\n";
    out << "J(E0) = " << b.J_E0 << "\n";
    out << "index bound rhs (J(E0) + e - min_eps0) = " << b.indexBoundRHS << "\n";
    out << "order bound (J(E)) = " << ext_to_text(b.orderBound) << "\n";
    out << "dual cover of E0: lambda =";
    for (long l : cover.lambda) out << " " << l;
    out << ", phi =";
    for (long p : cover.phi) out << " " << p;
    out << ", total = " << cover.total() << "\n";
    return out.str();
}

namespace {

json representation_json(const DAESystem& s, const Representation& rep) {
    json arr = json::array();
    for (const auto& [key, g] : rep.cofactors) {
        arr.push_back({{"equation", key.first + 1},
                       {"derivative", key.second},
                       {"cofactor", poly_to_string(s, g)}});
    }
    return arr;
}

} // namespace

std::string membership_report_json(const DAESystem& s, const DiffPoly& f,
                                   const MembershipBounds& bounds, bool searched,
                                   const std::optional<Representation>& rep) {
    json j;
    j["schema"] = 1;
    j["f"] = poly_to_string(s, f);
    j["N"] = bounds.N;
    j["N_syntactic"] = bounds.NSyntactic;
    j["D"] = bounds.D;
    j["degree_bound"] = bounds.degreeBound.get_str();
    if (searched) {
        j["found"] = rep.has_value();
        if (rep) j["representation"] = representation_json(s, *rep);
        else
            j["note"] = "NotFound at the degree cap; this is not a non-membership certificate";
    }
    return j.dump(2) + "\n";
}

std::string membership_report_text(const DAESystem& s, const DiffPoly& f,
                                   const MembershipBounds& bounds, bool searched,
                                   const std::optional<Representation>& rep) {
    std::ostringstream out;
    out << "f = " << poly_to_string(s, f) << "\n";
    out << "order bound N = " << bounds.N << " (syntactic: " << bounds.NSyntactic << ")\n";
    out << "degree bound = deg f + D^(r(N+1)) = " << bounds.degreeBound.get_str() << " (D = "
        << bounds.D << ")\n";
    if (searched) {
        if (rep) {
            out << "representation found (verified by exact expansion):\n";
            for (const auto& [key, g] : rep->cofactors)
                out << "  g[" << (key.first + 1) << "," << key.second << "] = "
                    << poly_to_string(s, g) << "\n";
        } else {
            out << "NotFound at the degree cap (not a non-membership certificate)\n";
        }
    }
    return out.str();
}

std::string trajectory_csv(const DAESystem& s, const Trajectory& traj) {
    std::ostringstream out;
    out << "t";
    for (int o = 0; o <= traj.stateOrders && o <= 1; ++o)
        for (int j = 0; j < s.n; ++j) {
            out << "," << s.unknownNames[j];
            if (o == 1) out << "'";
        }
    out << ",residual\n";
    for (size_t row = 0; row < traj.times.size(); ++row) {
        out << rational_to_decimal(traj.times[row]);
        for (int o = 0; o <= traj.stateOrders && o <= 1; ++o)
            for (int j = 0; j < s.n; ++j)
                out << "," << rational_to_decimal(traj.states[row][static_cast<size_t>(o) * s.n + j]);
        out << "," << rational_to_decimal(traj.residuals[row]) << "\n";
    }
    return out.str();
}

} // namespace daestruct
