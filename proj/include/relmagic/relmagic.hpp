#pragma once

#include "relmagic/bloch.hpp"
#include "relmagic/errors.hpp"
#include "relmagic/family.hpp"
#include "relmagic/optim.hpp"
#include "relmagic/qmat.hpp"
#include "relmagic/stab.hpp"
#include "relmagic/witness.hpp"
#include "relmagic/figures.hpp"
