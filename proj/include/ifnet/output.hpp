#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ifnet/contraction.hpp"
#include "ifnet/cycles.hpp"
#include "ifnet/dynamics.hpp"
#include "ifnet/network.hpp"

namespace ifnet {

using Json = nlohmann::ordered_json;

// Shortest decimal that parses back to the same double.
std::string format_double(double x);

// 1-based indices joined by ';'.
std::string format_set(const FiringSet& s);
std::string format_state(const State& v);

// step,t_bar,cum_time,firing_set,V_after
void write_spike_csv(std::ostream& out, const std::vector<OrbitPoint>& steps);
// t,V1..Vn,post_spike
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows, std::size_t n);
// point,piece,firing_set,V1..Vn
void write_cycle_csv(std::ostream& out, const LimitCycle& c);

Json state_json(const State& v);
Json set_json(const FiringSet& s);  // 1-based
Json to_json(const DerivedConstants& k);
Json to_json(const HypothesisReport& h);
Json to_json(const LimitCycle& c, double basin_fraction);
Json cycles_json(const CensusReport& r);  // array of cycles
Json to_json(const CensusReport& r);      // summary without cycle points
Json to_json(const SyncReport& r);
Json to_json(const ContractionReport& r);
Json to_json(const AbsorptionReport& r);
Json to_json(const LipschitzEstimate& r);
Json to_json(const AdaptedMetricReport& r);
Json to_json(const OConditions& o);
Json to_json(const RepellerReport& r);
Json to_json(const PeriodTwo& r);
Json to_json(const FateReport& r);

// Writes text to path, throwing Error on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace ifnet
