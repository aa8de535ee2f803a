#pragma once

#include <string>

#include "qcmflow/sim.hpp"

namespace qcm {

// Parses and validates a scenario from JSON text. Schema (unknown keys are
// rejected):
//
//   {
//     "name": "fig8",                  // optional
//     "t_end": 15,                     // required, ticks
//     "mode": "mixed",                 // poll | async | mixed (default mixed)
//     "poll_period": 5,                // ticks, default 5
//     "channel_delay": 0,              // ticks per hop, default 0
//     "trace_mode": "canonical",       // or "legacy-fig8", default canonical
//     "seed": 0,                       // optional
//     "devices": [
//       {
//         "id": 1,
//         "model": "memory",           // memory | repeater (default memory)
//         "script": [
//           {"t": 0, "field": "qcom", "value": "SDC"},
//           {"t": 2, "field": "qchannel_spec",
//            "value": {"wavelength_pm": 1550000}},
//           {"t": 4, "field": "qcom_spec",
//            "value": "000102030405060708090a0b0c0d0e0f"}
//         ]
//       }
//     ]
//   }
//
// Identifier fields take numbers (qcom also accepts NONE/QKD/QT/SDC);
// qchannel_spec and qec_spec take objects with their parameter keys;
// qcom_spec takes 32 hex digits.
Scenario load_scenario(const std::string& json_text);

// Reads the file and parses it. Throws IoError when unreadable.
Scenario load_scenario_file(const std::string& path);

}  // namespace qcm
