#pragma once

#include "tkft/flowchart.hpp"
#include "tkft/tm.hpp"

namespace tkft {

// A machine over {_, 1} that runs the chart on an interleaved binary tape
// (IoConvention::Kind::Tracks). With g = registers + 2, group j of cells
// holds an origin flag (group 0 only), a used flag and bit j of every
// register. Each operation starts and ends with the head on the used flag
// of group 0; there is one halting state, "halt".
TuringMachine flowchart_to_tm(const Flowchart& fc);

}  // namespace tkft
