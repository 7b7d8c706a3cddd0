#ifndef MIS_JSON_IO_HPP
#define MIS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "mis/analysis.hpp"
#include "mis/model.hpp"
#include "mis/unfold.hpp"

namespace mis {

nlohmann::json mis_to_json(const Mis& m);
nlohmann::json ncegs_to_json(const Ncegs& n);
nlohmann::json validation_to_json(const ValidationReport& r);
nlohmann::json trace_to_json(const Ncegs& n, const Trace& t);

// Plain-text graph description of the unfolding (node/edge statements).
std::string ncegs_to_dot(const Ncegs& n);

}  // namespace mis

#endif
