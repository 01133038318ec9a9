#pragma once

#define SPINPORT_VERSION "1.0.0"
