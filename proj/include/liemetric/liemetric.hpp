#pragma once

// Umbrella header: the full operator-norm geometry toolkit.

#include <liemetric/group.hpp>
#include <liemetric/algebra.hpp>
#include <liemetric/adjoint.hpp>
#include <liemetric/norms.hpp>
#include <liemetric/explog.hpp>
#include <liemetric/haar.hpp>
#include <liemetric/sampling.hpp>
#include <liemetric/builders.hpp>
#include <liemetric/constants.hpp>
#include <liemetric/subspace.hpp>
#include <liemetric/commutator.hpp>
#include <liemetric/quotient.hpp>
#include <liemetric/universality.hpp>
#include <liemetric/json_io.hpp>
#include <liemetric/verify.hpp>
