#pragma once

#include "sgps/numeric.hpp"
#include "sgps/ring.hpp"
#include "sgps/rings.hpp"
#include "sgps/algebra.hpp"
#include "sgps/linalg.hpp"
#include "sgps/ring_core.hpp"
#include "sgps/monoid.hpp"
#include "sgps/series.hpp"
#include "sgps/skew_laurent.hpp"
#include "sgps/chain_lab.hpp"
#include "sgps/scenarios.hpp"
#include "sgps/dsl.hpp"
#include "sgps/session.hpp"
#include "sgps/acceptance.hpp"
