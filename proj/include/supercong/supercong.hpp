#pragma once

// Umbrella header.

#include "supercong/batch.hpp"
#include "supercong/combinatorics.hpp"
#include "supercong/congruence.hpp"
#include "supercong/database.hpp"
#include "supercong/dsl.hpp"
#include "supercong/errors.hpp"
#include "supercong/integer.hpp"
#include "supercong/padic.hpp"
#include "supercong/polyratio.hpp"
#include "supercong/rational.hpp"
#include "supercong/replay.hpp"
#include "supercong/term.hpp"
#include "supercong/wz.hpp"
