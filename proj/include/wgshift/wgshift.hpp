#pragma once

#include "wgshift/error.hpp"
#include "wgshift/field.hpp"
#include "wgshift/node_set.hpp"
#include "wgshift/functional_graph.hpp"
#include "wgshift/shift.hpp"
#include "wgshift/oracle.hpp"
#include "wgshift/infinite.hpp"
#include "wgshift/random.hpp"
#include "wgshift/instance.hpp"
#include "wgshift/differential.hpp"
