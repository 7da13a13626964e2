#pragma once

#include "fermionic/algebra.hpp"
#include "fermionic/clifford.hpp"
#include "fermionic/config.hpp"
#include "fermionic/dynamics.hpp"
#include "fermionic/errors.hpp"
#include "fermionic/identities.hpp"
#include "fermionic/linalg.hpp"
#include "fermionic/metric.hpp"
#include "fermionic/multivector.hpp"
#include "fermionic/oracle.hpp"
#include "fermionic/random.hpp"
