import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the live test spawns the python service and waits out a real transit
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
