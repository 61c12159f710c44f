#ifndef LEPAGE_LEPAGE_HPP
#define LEPAGE_LEPAGE_HPP

#include "lepage/analytic.hpp"
#include "lepage/arrivals.hpp"
#include "lepage/batch.hpp"
#include "lepage/error.hpp"
#include "lepage/format.hpp"
#include "lepage/quadrature.hpp"
#include "lepage/random.hpp"
#include "lepage/samplers.hpp"
#include "lepage/spectral.hpp"
#include "lepage/stats.hpp"

#endif // LEPAGE_LEPAGE_HPP
