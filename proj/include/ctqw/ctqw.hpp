#ifndef CTQW_CTQW_HPP
#define CTQW_CTQW_HPP

#include "ctqw/analytic.hpp"
#include "ctqw/approximants.hpp"
#include "ctqw/envelope.hpp"
#include "ctqw/errors.hpp"
#include "ctqw/hamiltonian.hpp"
#include "ctqw/network.hpp"
#include "ctqw/spectrum.hpp"
#include "ctqw/time_series.hpp"
#include "ctqw/transport.hpp"

#endif // CTQW_CTQW_HPP
