#pragma once

#include "xf/aberth.hpp"
#include "xf/asymptotics.hpp"
#include "xf/classical.hpp"
#include "xf/dense_poly.hpp"
#include "xf/energy.hpp"
#include "xf/errors.hpp"
#include "xf/exceptional.hpp"
#include "xf/family.hpp"
#include "xf/fekete.hpp"
#include "xf/interp.hpp"
#include "xf/jet.hpp"
#include "xf/ortho_series.hpp"
#include "xf/parallel.hpp"
#include "xf/roots.hpp"
#include "xf/summation.hpp"
#include "xf/verify.hpp"
#include "xf/version.hpp"
#include "xf/weight.hpp"
