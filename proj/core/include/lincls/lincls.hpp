#pragma once

#include "lincls/cross_validation.hpp"
#include "lincls/dataset.hpp"
#include "lincls/discretizer.hpp"
#include "lincls/error.hpp"
#include "lincls/experiment.hpp"
#include "lincls/function.hpp"
#include "lincls/io.hpp"
#include "lincls/layout.hpp"
#include "lincls/metrics.hpp"
#include "lincls/model.hpp"
#include "lincls/objectives.hpp"
#include "lincls/preprocess.hpp"
#include "lincls/report.hpp"
#include "lincls/solvers.hpp"
#include "lincls/synthetic.hpp"
