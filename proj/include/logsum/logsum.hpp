#pragma once

#include "logsum/deformed_log.hpp"
#include "logsum/errors.hpp"
#include "logsum/function_spec.hpp"
#include "logsum/hermitian.hpp"
#include "logsum/jacobi.hpp"
#include "logsum/loewner_ineq.hpp"
#include "logsum/matfun.hpp"
#include "logsum/matrix_io.hpp"
#include "logsum/operator_function.hpp"
#include "logsum/scalar_ineq.hpp"
#include "logsum/trace_ineq.hpp"
#include "logsum/verdict.hpp"

#include "logsum/harness/eval.hpp"
#include "logsum/harness/generators.hpp"
#include "logsum/harness/report.hpp"
#include "logsum/harness/rng.hpp"
#include "logsum/harness/search.hpp"
#include "logsum/harness/suites.hpp"
