#pragma once

#include "bellops/angles.hpp"
#include "bellops/bounds.hpp"
#include "bellops/coefficients.hpp"
#include "bellops/coplanar.hpp"
#include "bellops/dense_oracle.hpp"
#include "bellops/errors.hpp"
#include "bellops/harness.hpp"
#include "bellops/lhv.hpp"
#include "bellops/multi_index.hpp"
#include "bellops/numeric.hpp"
#include "bellops/optimizer.hpp"
#include "bellops/quantum_state.hpp"
#include "bellops/rng.hpp"
#include "bellops/serialize.hpp"
#include "bellops/signs.hpp"
#include "bellops/statevector.hpp"
#include "bellops/version.hpp"
#include "bellops/werner_wolf.hpp"
