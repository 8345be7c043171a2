#pragma once

#include <json.hpp>

#include "kantorovich/kernel.hpp"
#include "kantorovich/intervals.hpp"
#include "kantorovich/moments.hpp"
#include "kantorovich/operator.hpp"

namespace kantorovich {

struct ConvergenceReport;

// {"type":"bspline","h":3} | {"type":"spline_combo","h":3,"eps0":-1,"eps1":1}
// | {"type":"blackman_harris"} | {"type":"zero"}
KernelSpec kernel_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KernelSpec& spec);

// {"kind":"constant","a":0,"b":1}
// | {"kind":"symmetric_alpha","alpha":1,"delta_star":0.5,"m_star":2,"seed":42}
// | {"kind":"seeded_random","delta_star":0.5,"m_star":1,"seed":7}
IntervalSequence intervals_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntervalSequence& seq);

// "sin" | {"name":"square","limit":4} | {"name":"holder_sine","beta":0.5} | ...
TargetFunction function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AdmissibilityCertificate& cert);
nlohmann::json to_json(const MomentTable& table);
nlohmann::json to_json(const ConvergenceReport& report);

}  // namespace kantorovich
