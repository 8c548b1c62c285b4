// Wire format shared with the local service. One instruction per node,
// pre-ordered so a parent index always refers to an earlier command.

export const OPS = ['create_frame', 'create_text', 'create_rectangle'] as const;

export type InstructionOp = (typeof OPS)[number];

export interface InstructionCommand {
  op: InstructionOp;
  parent: number | null;
  name: string;
  x: number;
  y: number;
  width: number;
  height: number;
  autolayout?: boolean;
  color?: string;
  stroke_color?: string;
  stroke_weight?: number;
  border_radius?: number;
  effect?: { effect_name: string; effect_color: string };
  text?: string;
  text_color?: string;
  font_family?: string;
  font_size?: number;
  font_weight?: number;
}

export interface GenerateResponse {
  json: unknown;
  instructions: InstructionCommand[];
}

export type UIMessage =
  | { type: 'render'; instructions: unknown }
  | { type: 'cancel' };

export type PluginMessage =
  | { type: 'render-complete'; nodeCount: number; warnings: string[] }
  | { type: 'render-error'; message: string };
