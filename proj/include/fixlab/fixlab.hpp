#pragma once

#include "fixlab/catalog.hpp"
#include "fixlab/checker.hpp"
#include "fixlab/expr.hpp"
#include "fixlab/functionals.hpp"
#include "fixlab/metric.hpp"
#include "fixlab/picard.hpp"
#include "fixlab/volterra.hpp"
