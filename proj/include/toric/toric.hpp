#ifndef TORIC_TORIC_HPP
#define TORIC_TORIC_HPP

#include <toric/rational.hpp>
#include <toric/poly.hpp>
#include <toric/series.hpp>
#include <toric/matrix.hpp>
#include <toric/localized.hpp>
#include <toric/serialize.hpp>
#include <toric/fgl.hpp>
#include <toric/quasitoric.hpp>
#include <toric/localize.hpp>
#include <toric/manifold_io.hpp>

#endif
