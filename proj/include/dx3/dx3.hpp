#pragma once

// Darboux III oscillator toolkit: deformed Hamiltonian model, ladder algebra,
// closed-form trajectories, a direct-integration oracle, and the CLI front end.

#include "errors.hpp"
#include "model.hpp"
#include "sga.hpp"
#include "solutions.hpp"
#include "dop853.hpp"
#include "oracle.hpp"
#include "verify.hpp"
#include "csv.hpp"
