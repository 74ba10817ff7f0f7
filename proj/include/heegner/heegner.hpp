#pragma once

// Umbrella header.

#include "heegner/errors.hpp"
#include "heegner/rational.hpp"
#include "heegner/matrix.hpp"
#include "heegner/arith.hpp"
#include "heegner/clifford.hpp"
#include "heegner/dirichlet.hpp"
#include "heegner/localmult.hpp"
#include "heegner/admissibility.hpp"
#include "heegner/quaternion.hpp"
#include "heegner/lattice_oracle.hpp"
#include "heegner/intersect.hpp"
#include "heegner/report.hpp"
