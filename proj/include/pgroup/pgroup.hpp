#pragma once

#include "analysis.hpp"
#include "builders.hpp"
#include "catalog.hpp"
#include "core.hpp"
#include "eta.hpp"
#include "group.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "pc.hpp"
#include "pf.hpp"
#include "subgroup.hpp"
#include "verify.hpp"
