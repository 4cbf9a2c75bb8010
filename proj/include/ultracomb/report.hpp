#pragma once

#include <json.hpp>

#include "ultracomb/limits.hpp"
#include "ultracomb/pattern.hpp"
#include "ultracomb/ramsey.hpp"
#include "ultracomb/sumset.hpp"
#include "ultracomb/ultrafilter.hpp"

namespace ultracomb {

using Json = nlohmann::ordered_json;

Json report_json(const ModelReport& r);
Json report_json(const Verdict& v);
Json report_json(const Witness& w);
Json report_json(const SumsetCertificate& c);
Json report_json(const DensityReport& r);
Json report_json(const LimitResult& r);
Json report_json(const HomogeneousSet& h);
Json report_json(const CauchyWitness& c);

/// Stable digest of a pattern family: arrangements, grounds, target boxes and
/// materialized target contents.
std::string pattern_spec_hash(const PatternSpec& spec);

/// Certificate document for a witness: spec hash, sequences, per-arrangement
/// check counts, first violation if any.
Json witness_certificate(const PatternSpec& spec, const Witness& w);

}  // namespace ultracomb
