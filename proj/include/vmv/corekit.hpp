#pragma once
// Umbrella for the substrate: exact rationals, mod-1 phase arithmetic,
// the deterministic block runner, and the error taxonomy.

#include "vmv/errors.hpp"
#include "vmv/parallel.hpp"
#include "vmv/phase.hpp"
#include "vmv/rational.hpp"
