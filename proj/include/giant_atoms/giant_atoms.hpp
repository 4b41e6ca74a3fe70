// Umbrella header.
#pragma once

#include "giant_atoms/algebra.hpp"
#include "giant_atoms/config.hpp"
#include "giant_atoms/couplings.hpp"
#include "giant_atoms/dynamics.hpp"
#include "giant_atoms/gates.hpp"
#include "giant_atoms/io.hpp"
#include "giant_atoms/parallel.hpp"
#include "giant_atoms/protocols.hpp"
#include "giant_atoms/tomography.hpp"
