#pragma once

// Umbrella header: the whole toolkit.

#include "monosplit/model.hpp"
#include "monosplit/porter.hpp"
#include "monosplit/stopwords.hpp"
#include "monosplit/ingest.hpp"
#include "monosplit/similarity.hpp"
#include "monosplit/cluster.hpp"
#include "monosplit/graph.hpp"
#include "monosplit/metrics.hpp"
