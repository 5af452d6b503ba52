#pragma once

namespace sheafnet {

/// Kernel selection: the OpenMP path or the serial reference path.
/// Both must produce identical results; tests compare them and the bench
/// binary times them against each other.
enum class Exec { serial, parallel };

}  // namespace sheafnet
