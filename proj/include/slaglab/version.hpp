#pragma once

#define SLAGLAB_VERSION "0.1.0"
