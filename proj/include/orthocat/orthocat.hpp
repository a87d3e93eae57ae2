#pragma once

// Umbrella header for the orthocat library.

#include "orthocat/coherent.hpp"
#include "orthocat/errors.hpp"
#include "orthocat/families.hpp"
#include "orthocat/fock.hpp"
#include "orthocat/husimi.hpp"
#include "orthocat/io.hpp"
#include "orthocat/phase.hpp"
#include "orthocat/sampling.hpp"
#include "orthocat/solver.hpp"
#include "orthocat/types.hpp"
