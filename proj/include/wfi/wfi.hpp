#pragma once

#include "rational.hpp"
#include "extreal.hpp"
#include "asymptote.hpp"
#include "quadrature.hpp"
#include "fn.hpp"
#include "step_function.hpp"
#include "weight.hpp"
#include "rearrange.hpp"
#include "legs.hpp"
#include "signal.hpp"
#include "calderon.hpp"
#include "criteria.hpp"
#include "hardy.hpp"
#include "norms.hpp"
#include "parallel.hpp"
#include "extremal.hpp"
#include "verify.hpp"
#include "report_json.hpp"
