import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    globalSetup: "./tests/global_setup.ts",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
  },
});
