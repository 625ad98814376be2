#pragma once

#include "arlab/common.hpp"
#include "arlab/figures.hpp"
#include "arlab/group.hpp"
#include "arlab/json_io.hpp"
#include "arlab/monodromy.hpp"
#include "arlab/path.hpp"
#include "arlab/perm.hpp"
#include "arlab/radical.hpp"
#include "arlab/roots.hpp"
#include "arlab/solvers.hpp"
#include "arlab/svg.hpp"
#include "arlab/witness.hpp"
#include "arlab/words.hpp"
