#pragma once

#include "seeprivacy/chunker.hpp"
#include "seeprivacy/config.hpp"
#include "seeprivacy/detect.hpp"
#include "seeprivacy/diagnostics.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/eval.hpp"
#include "seeprivacy/geometry.hpp"
#include "seeprivacy/icons.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/language.hpp"
#include "seeprivacy/lexical.hpp"
#include "seeprivacy/ocr.hpp"
#include "seeprivacy/pipeline.hpp"
#include "seeprivacy/policy.hpp"
#include "seeprivacy/ports.hpp"
#include "seeprivacy/presenter.hpp"
#include "seeprivacy/remote.hpp"
#include "seeprivacy/segment.hpp"
#include "seeprivacy/sentences.hpp"
#include "seeprivacy/taxonomy.hpp"
#include "seeprivacy/text.hpp"
