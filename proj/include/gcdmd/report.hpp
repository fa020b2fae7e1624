#pragma once

#include "gcdmd/dmd.hpp"
#include "gcdmd/embed.hpp"
#include "gcdmd/granger.hpp"
#include "gcdmd/io.hpp"
#include "gcdmd/pipeline.hpp"
#include "gcdmd/synth.hpp"
#include "gcdmd/var.hpp"

#include <json.hpp>
#include <string>

namespace gcdmd {

using Json = nlohmann::json;  // std::map backed, so keys serialize sorted

inline constexpr int schema_version = 1;

Json num(double v);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const CVector& v);
Json to_json(const CMatrix& m);

Json to_json(const PeVerdict& v);
Json to_json(const Condition& c);
Json to_json(const WaldResult& w);
Json to_json(const GctResult& g);
Json to_json(const ValidationReport& v);
Json to_json(const SpectrumReport& s);
Json to_json(const DmdModel& m);
Json model_summary(const DmdModel& m);
Json to_json(const AnalysisReport& a);
Json to_json(const SweepReport& s);
Json to_json(const VarModel& m);
Json to_json(const OrderSelection& o);
Json to_json(const CausalityMatrix& c);
Json to_json(const CausalGraphSpec& s);
Json to_json(const CoherencySpec& s);
CoherencySpec coherency_from_json(const Json& j);
CausalGraphSpec graph_from_json(const Json& j);

const char* gct_mode_name(GctMode m);
GctMode parse_gct_mode(const std::string& s);

// Adds schema_version and kind, then dumps with sorted keys and a trailing newline.
std::string document(const std::string& kind, Json body);

// Combined plot columns: lag, p_value, statistic, cond, hankel_cond, per-channel RMSEs.
std::string sweep_columns_csv(const SweepReport& s, const std::vector<std::string>& labels);
std::string sweep_column_csv(const SweepReport& s, const std::string& column);
std::string eigenvalue_scatter_csv(const SweepReport& s);

}
