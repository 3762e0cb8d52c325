#ifndef RUM_JSON_IO_HPP
#define RUM_JSON_IO_HPP

#include <json.hpp>

#include <iosfwd>

#include "rum/graph.hpp"
#include "rum/ident.hpp"
#include "rum/parametric.hpp"

// Wire formats: rationals serialize as "p/q" strings, orders as label
// strings when every label is a single character and as label arrays
// otherwise. Floats print with 17 significant digits.
namespace rum {

using nlohmann::json;

std::string format_double17(double x);

json universe_to_json(const Universe& u);
Universe universe_from_json(const json& j, int cap = Universe::kHardCap);

json order_to_json(const Universe& u, const LinearOrder& o);
LinearOrder order_from_json(const Universe& u, const json& j);

json distribution_to_json(const UniverseContext& ctx, const Distribution& d);
Distribution distribution_from_json(const UniverseContext& ctx, const json& j);

// Universe carried by (or inferred from) a distribution file: an explicit
// "labels" field wins; otherwise the sorted characters of the first weight
// key are used.
Universe universe_from_distribution_json(const json& j,
                                         int cap = Universe::kHardCap);

json signed_measure_to_json(const UniverseContext& ctx, const SignedMeasure& m);
SignedMeasure signed_measure_from_json(const UniverseContext& ctx,
                                       const json& j);

json rule_to_json(const UniverseContext& ctx, const RandomChoiceRule& r);
RandomChoiceRule rule_from_json(const UniverseContext& ctx, const json& j);

json bm_table_to_json(const UniverseContext& ctx, const BlockMarschakTable& q);

json square_to_json(const UniverseContext& ctx, const ConjugateSquare& s);
ConjugateSquare square_from_json(const UniverseContext& ctx, const json& j);

json swap_sequence_to_json(const UniverseContext& ctx, const SwapSequence& s);
SwapSequence swap_sequence_from_json(const UniverseContext& ctx, const json& j);

json basis_to_json(const UniverseContext& ctx, const RyserBasis& b);

json class_report_to_json(const UniverseContext& ctx,
                          const EquivalenceClassReport& r);

json jacobian_report_to_json(const JacobianReport& r);
json scan_result_to_json(const ScanResult& r);

json graph_to_json(const UniverseContext& ctx, const SegmentGraph& g);
json graph_to_json(const UniverseContext& ctx, const LineGraph& g);
json graph_to_json(const UniverseContext& ctx, const PreferenceMultigraph& g);
json graph_to_json(const UniverseContext& ctx, const SimpleGraph& g);

// JSON-lines table for external parametric models: one object per line,
// {"theta":[...],"weights":{"abc":0.25,...}}.
std::vector<ExternalRow> external_rows_from_jsonl(const UniverseContext& ctx,
                                                  std::istream& in);

}  // namespace rum

#endif
