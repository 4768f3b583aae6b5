#pragma once

#include "eqc/error.hpp"
#include "eqc/gf.hpp"
#include "eqc/poly.hpp"
#include "eqc/decomp.hpp"
#include "eqc/constructions.hpp"
#include "eqc/identify.hpp"
#include "eqc/counting.hpp"
#include "eqc/census.hpp"
