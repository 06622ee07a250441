// Keyboard map: arrows/space navigate, Home returns to the first step,
// A toggles annotation mode, +/- scale the replay speed.

export type PlayerCommand =
  | { kind: "navigate"; direction: "next" | "prev" | "home" }
  | { kind: "toggle-annotate" }
  | { kind: "speed"; factor: number };

export function commandForKey(key: string): PlayerCommand | null {
  switch (key) {
    case "ArrowRight":
    case " ":
      return { kind: "navigate", direction: "next" };
    case "ArrowLeft":
      return { kind: "navigate", direction: "prev" };
    case "Home":
      return { kind: "navigate", direction: "home" };
    case "a":
    case "A":
      return { kind: "toggle-annotate" };
    case "+":
    case "=":
      return { kind: "speed", factor: 2 };
    case "-":
      return { kind: "speed", factor: 0.5 };
    default:
      return null;
  }
}
