#pragma once

#define KURSYNC_VERSION "0.1.0"
