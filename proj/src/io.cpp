#include "clab/io.hpp"

namespace clab::io {

void write_histogram_csv(std::ostream& out, const SolutionHistogram& histogram) {
    out << "alpha3,count\n";
    for (std::size_t a = 0; a < histogram.counts.size(); ++a) out << a << ',' << histogram.counts[a] << '\n';
}

json config_json(const ExperimentConfig& cfg) {
    return {{"p", cfg.pp.p()},         {"m", cfg.pp.m()},     {"q", cfg.pp.q()},
            {"phi", cfg.pp.phi()},     {"alpha2", cfg.alpha2}, {"N", cfg.N},
            {"box", cfg.box()},        {"epsilon", cfg.epsilon},
            {"in_admissible_window", cfg.in_admissible_window()}};
}

json to_json(const SolutionHistogram& histogram) {
    return {{"total", histogram.total()}, {"counts", histogram.counts}};
}

json to_json(const MainTermReport& r) {
    return {{"K", r.K},         {"L", r.L},         {"M", r.M.fraction()}, {"K_hat", r.K_hat},
            {"L_hat", r.L_hat}, {"C_q", r.C_q.fraction()}, {"predicted", r.predicted}};
}

json to_json(const ExceptionalReport& r) {
    return {{"predicted", r.predicted},
            {"coprime_total", r.coprime_total},
            {"exceptional_count", r.indices.size()},
            {"fraction", r.fraction},
            {"min_rel_error", r.min_rel_error},
            {"max_rel_error", r.max_rel_error},
            {"mean_rel_error", r.mean_rel_error},
            {"indices", r.indices}};
}

json to_json(const VarianceReport& r) {
    return {{"V_def", r.V_def.fraction()},
            {"V1", r.V1.fraction()},
            {"V2", r.V2},
            {"V_charsum", r.V_charsum},
            {"rel_diff_split", r.rel_diff_split},
            {"rel_diff_charsum", r.rel_diff_charsum},
            {"passed", r.passed()}};
}

json to_json(const QuadrupleCount& c) {
    return {{"lhs", c.lhs.get_str()}, {"rhs", c.rhs.get_str()}, {"equal", c.lhs == c.rhs}};
}

json to_json(const BoundRatioReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"bound_name", row.name},
                        {"n_exponent", row.n_exponent.fraction()},
                        {"q_exponent", row.q_exponent.fraction()},
                        {"empirical_max", r.empirical_max},
                        {"reference_value", row.reference},
                        {"ratio", row.ratio}});
    }
    return {{"q", r.q},
            {"N", r.N},
            {"empirical_max", r.empirical_max},
            {"argmax_index", r.argmax_index},
            {"one_sided_max", r.one_sided_max},
            {"trivial_bound", r.trivial_bound},
            {"trivial_bound_holds", r.trivial_bound_holds},
            {"rows", rows}};
}

json to_json(const ExponentPair& pair) {
    return {{"k", pair.k.fraction()},
            {"l", pair.l.fraction()},
            {"word", compress_word(pair.word)},
            {"k_decimal", pair.k.decimal(15)},
            {"l_decimal", pair.l.decimal(15)}};
}

json to_json(const SearchResult& r) {
    return {{"best_pair", to_json(r.best_pair)},
            {"best_f", r.best_f.fraction()},
            {"best_f_decimal", r.best_f.decimal(15)},
            {"nodes_expanded", r.nodes_expanded},
            {"frontier_bound_decimal", r.frontier_bound.decimal(15)}};
}

void write_bound_ratios_csv(std::ostream& out, const BoundRatioReport& report) {
    out << "bound_name,n_exponent,q_exponent,empirical_max,reference_value,ratio\n";
    for (const auto& row : report.rows) {
        out << row.name << ',' << row.n_exponent.fraction() << ',' << row.q_exponent.fraction() << ','
            << json(report.empirical_max).dump() << ',' << json(row.reference).dump() << ','
            << json(row.ratio).dump() << '\n';
    }
}

}  // namespace clab::io
