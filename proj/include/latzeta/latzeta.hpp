#ifndef LATZETA_LATZETA_HPP
#define LATZETA_LATZETA_HPP

#include "checked_int.hpp"
#include "class_group.hpp"
#include "dirichlet.hpp"
#include "qform.hpp"
#include "quad_field.hpp"
#include "sublattice.hpp"
#include "zeta_formulas.hpp"

#endif // LATZETA_LATZETA_HPP
