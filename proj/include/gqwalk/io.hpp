#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gqwalk/metrics.hpp"
#include "gqwalk/polynomial.hpp"
#include "gqwalk/problems.hpp"
#include "gqwalk/schedule.hpp"
#include "gqwalk/spectrum.hpp"
#include "gqwalk/state.hpp"

namespace gqw {

using json = nlohmann::json;

// shortest exact decimal form used by every CSV writer
std::string fmt_g17(double v);

json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const json& j);

json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const json& j);

json schedule_to_json(const Schedule& s, const SampledGaps& gaps, bool exact);
Schedule schedule_from_json(const json& j);

json layer_plan_to_json(const LayerPlan& plan);

json summary_json(const MetricBundle& final_metrics, double total_time);

std::string trace_csv(const std::vector<MetricBundle>& snapshots, int tracked_ranks);
// threshold <= 0 writes every rank; a positive threshold keeps rows at or
// above it (display view)
std::string distribution_csv(const StateVector& s, const Spectrum& spec, double threshold);
std::string gamma_energy_csv(const SampledGaps& gaps);
std::string gamma_time_csv(const Schedule& s);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);
void save_json(const json& j, const std::string& path);
json load_json(const std::string& path);

}  // namespace gqw
