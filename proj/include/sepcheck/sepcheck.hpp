#pragma once

#include "sepcheck/blocks.hpp"
#include "sepcheck/checker.hpp"
#include "sepcheck/context.hpp"
#include "sepcheck/datatype.hpp"
#include "sepcheck/legacy.hpp"
#include "sepcheck/mode.hpp"
#include "sepcheck/oracle.hpp"
#include "sepcheck/surface.hpp"
#include "sepcheck/type_expr.hpp"
