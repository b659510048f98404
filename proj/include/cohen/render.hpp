#pragma once

#include <string>

#include "cohen/blockchain.hpp"
#include "cohen/surgery.hpp"

namespace cohen {

enum class RenderFormat { Ascii, Svg };

// One cell per bit, bottom row first. Step-active cells are hatched (shaded
// in ASCII), marker and bit rows are annotated with their payload indices.
// Deterministic: equal inputs give byte-identical output. The matrix must be
// uniform.
std::string render_matrix(const MatrixCondition& matrix, const BlockchainResult* logs,
                          RenderFormat format);

// Column diagram of a primed family next to its reference real.
std::string render_primed(const PrimedFamily& primed, RenderFormat format);

}  // namespace cohen
