#pragma once

namespace lienard {

/// Serial is the reference path kept for testing; Parallel runs the same
/// per-item kernel under OpenMP. Both must produce identical results.
enum class Execution { Serial, Parallel };

}  // namespace lienard
