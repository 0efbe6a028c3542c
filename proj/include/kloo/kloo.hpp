#pragma once

#include "kloo/cyclotomic.hpp"
#include "kloo/error.hpp"
#include "kloo/ffield.hpp"
#include "kloo/graded.hpp"
#include "kloo/lattice.hpp"
#include "kloo/lfunc.hpp"
#include "kloo/modular.hpp"
#include "kloo/ordinarity.hpp"
#include "kloo/polygon.hpp"
#include "kloo/rational.hpp"
