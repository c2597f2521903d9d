#ifndef OSCSUM_OSCSUM_HPP
#define OSCSUM_OSCSUM_HPP

#include "model.hpp"
#include "quadrature.hpp"
#include "poisson.hpp"
#include "bounds.hpp"
#include "oracle.hpp"
#include "asymptotics.hpp"

#endif // OSCSUM_OSCSUM_HPP
