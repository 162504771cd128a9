#pragma once

#include "semiflux/distributions.hpp"
#include "semiflux/ext_real.hpp"
#include "semiflux/hamiltonian.hpp"
#include "semiflux/interval_topology.hpp"
#include "semiflux/io.hpp"
#include "semiflux/orientation.hpp"
#include "semiflux/parallel.hpp"
#include "semiflux/piecewise.hpp"
#include "semiflux/quadrature.hpp"
#include "semiflux/smooth.hpp"
#include "semiflux/stieltjes.hpp"
#include "semiflux/symplectic.hpp"
