///
/// file: skewloop.hpp
///
/// Umbrella header.
///

#ifndef SKEWLOOP_SKEWLOOP_HPP
#define SKEWLOOP_SKEWLOOP_HPP

#include "skewloop/cone.hpp"
#include "skewloop/core.hpp"
#include "skewloop/io.hpp"
#include "skewloop/lp.hpp"
#include "skewloop/segments.hpp"
#include "skewloop/synthesis.hpp"
#include "skewloop/tantrix.hpp"
#include "skewloop/torus.hpp"

#endif  // SKEWLOOP_SKEWLOOP_HPP
