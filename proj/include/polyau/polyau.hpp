#pragma once

#include "polyau/arith.hpp"
#include "polyau/classnum.hpp"
#include "polyau/forms.hpp"
#include "polyau/integer.hpp"
#include "polyau/local.hpp"
#include "polyau/qseries.hpp"
#include "polyau/reps.hpp"
#include "polyau/universality.hpp"
#include "polyau/witness.hpp"
