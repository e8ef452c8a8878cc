#pragma once

#include "calibration.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "fit.hpp"
#include "grid.hpp"
#include "lp_frame.hpp"
#include "norms.hpp"
#include "report.hpp"
#include "sampled.hpp"
#include "signal_model.hpp"
#include "tauberian.hpp"
#include "verification.hpp"
#include "version.hpp"
#include "zygmund_hoelder.hpp"
