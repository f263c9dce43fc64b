#pragma once

namespace archegraph {

enum class Execution { serial, parallel };

}  // namespace archegraph
